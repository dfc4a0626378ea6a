/** Server-side SVG rendering (no DOM, no timestamps, fixed canvas size). */

import * as fs from 'fs';
import * as path from 'path';
import * as echarts from 'echarts';

import { FigureSpec, buildFigure } from './figures';

export const WIDTH = 840;
export const HEIGHT = 560;

export function renderToSvg(spec: FigureSpec): string {
    const option = buildFigure(spec);
    const chart = echarts.init(null as unknown as HTMLElement, undefined, {
        renderer: 'svg',
        ssr: true,
        width: WIDTH,
        height: HEIGHT,
    });
    try {
        chart.setOption(option as echarts.EChartsCoreOption);
        return chart.renderToSVGString();
    } finally {
        chart.dispose();
    }
}

export function renderFigure(spec: FigureSpec): void {
    const svg = renderToSvg(spec);
    fs.mkdirSync(path.dirname(path.resolve(spec.output)), { recursive: true });
    fs.writeFileSync(spec.output, svg, 'utf-8');
}

/** Shared entry point for the per-figure scripts: inputs..., output path. */
export function figureMain(id: FigureSpec['id'], argv: string[]): number {
    if (argv.length < 2) {
        process.stderr.write(`usage: ${id} <input.csv ...> <output.svg>\n`);
        return 2;
    }
    const spec: FigureSpec = {
        id,
        inputs: argv.slice(0, -1),
        output: argv[argv.length - 1],
    };
    try {
        renderFigure(spec);
    } catch (err) {
        process.stderr.write(`${id}: ${(err as Error).message}\n`);
        return 1;
    }
    return 0;
}
