/**
 * Figure builders: CSV inputs -> echarts option + data assertions.
 *
 * Pure plotting: nothing here recomputes physics. Each builder re-asserts
 * the orderings the data must satisfy (correlated above uncorrelated above
 * single-switch, and the per-figure analogues) before anything renders.
 * Colors follow the source material: orange correlated, blue uncorrelated,
 * black references.
 */

import { CsvError, Table, column, readCsv, series } from './csv';

export type ChartOption = Record<string, unknown>;

export interface FigureSpec {
    id: FigureId;
    inputs: string[];
    output: string;
}

export type FigureId = 'fig2' | 'fig3' | 'fig4' | 'fig5' | 'fig6' | 'fig7' | 'fig8';

export const INPUT_COUNTS: Record<FigureId, number> = {
    fig2: 3, fig3: 1, fig4: 6, fig5: 1, fig6: 2, fig7: 2, fig8: 3,
};

export class OrderingError extends Error {}

const ORANGE = '#e08020';
const BLUE = '#3070c0';
const BLACK = '#202020';
const TOL = 1e-9;

function assertDominates(hi: [number, number][], lo: [number, number][],
                         what: string): void {
    const loByX = new Map(lo.map(([x, y]) => [x, y]));
    for (const [x, y] of hi) {
        const other = loByX.get(x);
        if (other !== undefined && y < other - TOL) {
            throw new OrderingError(`${what} violated at delta=${x}: ${y} < ${other}`);
        }
    }
}

function line(name: string, data: [number, number][], color: string,
              dashed = false): Record<string, unknown> {
    return {
        type: 'line', name, data, showSymbol: false,
        lineStyle: { color, width: 2, type: dashed ? 'dashed' : 'solid' },
        itemStyle: { color },
    };
}

function axes(xName: string, yName: string, xMax?: number): ChartOption {
    return {
        animation: false,
        legend: { top: 6 },
        grid: { left: 60, right: 24, top: 44, bottom: 46 },
        xAxis: { type: 'value', name: xName, nameLocation: 'middle', nameGap: 28, max: xMax },
        yAxis: { type: 'value', name: yName, nameLocation: 'middle', nameGap: 42 },
    };
}

type Builder = (inputs: string[]) => ChartOption;

function fig2(inputs: string[]): ChartOption {
    const [corrPath, uncPath, singlePath] = inputs;
    const corr = series(readCsv(corrPath), 'delta', 'gamma', corrPath);
    const unc = series(readCsv(uncPath), 'delta', 'gamma', uncPath);
    const single = series(readCsv(singlePath), 'delta', 'gamma', singlePath);
    assertDominates(corr, unc, 'correlated above uncorrelated');
    assertDominates(unc, single, 'uncorrelated above single');
    return {
        ...axes('cis-trans gap', 'optimal yield'),
        series: [
            line('correlated final state', corr, ORANGE),
            line('uncorrelated final state', unc, BLUE),
            line('single switch', single, BLACK),
        ],
    };
}

function fig3(inputs: string[]): ChartOption {
    const t = readCsv(inputs[0]);
    const mi = series(t, 'delta', 'mutual_information', inputs[0]);
    for (const [x, y] of mi) {
        if (y < -TOL) throw new OrderingError(`negative mutual information at delta=${x}`);
    }
    return {
        ...axes('cis-trans gap', 'mutual information'),
        series: [line('two-switch optimum', mi, ORANGE)],
    };
}

function fig4(inputs: string[]): ChartOption {
    // pairs of (correlated, uncorrelated) CSVs; n read from each file
    if (inputs.length % 2 !== 0) {
        throw new CsvError('fig4 expects correlated/uncorrelated CSV pairs');
    }
    const styles = [undefined, 'dashed', 'dotted'];
    const out: Record<string, unknown>[] = [];
    for (let k = 0; k < inputs.length / 2; k++) {
        const corrT = readCsv(inputs[2 * k]);
        const uncT = readCsv(inputs[2 * k + 1]);
        const n = column(corrT, 'n', inputs[2 * k])[0];
        const corr = series(corrT, 'delta', 'gamma', inputs[2 * k]);
        const unc = series(uncT, 'delta', 'gamma', inputs[2 * k + 1]);
        assertDominates(corr, unc, `correlated above uncorrelated (n=${n})`);
        const dash = styles[k % styles.length] === 'dashed';
        out.push(line(`correlated n=${n}`, corr, ORANGE, dash));
        out.push(line(`uncorrelated n=${n}`, unc, BLUE, dash));
    }
    return { ...axes('cis-trans gap', 'optimal yield'), series: out };
}

function fig5(inputs: string[]): ChartOption {
    const t = readCsv(inputs[0]);
    const n = column(t, 'n', inputs[0]);
    const gu = column(t, 'gamma_u', inputs[0]);
    const gc = column(t, 'gamma_c', inputs[0]);
    const dn = column(t, 'delta_n', inputs[0]);
    gc.forEach((v, i) => {
        if (v < gu[i] - TOL) {
            throw new OrderingError(`correlated below uncorrelated at n=${n[i]}`);
        }
    });
    const pair = (ys: number[]) => n.map((x, i) => [x, ys[i]] as [number, number]);
    return {
        animation: false,
        legend: { top: 6 },
        grid: [
            { left: 60, right: 24, top: 44, height: '34%' },
            { left: 60, right: 24, bottom: 46, height: '34%' },
        ],
        xAxis: [
            { type: 'value', gridIndex: 0, name: 'switch count' },
            { type: 'value', gridIndex: 1, name: 'switch count', nameLocation: 'middle', nameGap: 28 },
        ],
        yAxis: [
            { type: 'value', gridIndex: 0, name: 'optimal yield' },
            { type: 'value', gridIndex: 1, name: 'relative advantage' },
        ],
        series: [
            { ...line('correlated', pair(gc), ORANGE), xAxisIndex: 0, yAxisIndex: 0 },
            { ...line('uncorrelated', pair(gu), BLUE), xAxisIndex: 0, yAxisIndex: 0 },
            { ...line('advantage', pair(dn), BLACK), xAxisIndex: 1, yAxisIndex: 1 },
        ],
    };
}

function fig6(inputs: string[]): ChartOption {
    const [zeroPath, maxPath] = inputs;
    const zero = readCsv(zeroPath);
    const amax = readCsv(maxPath);
    const out: Record<string, unknown>[] = [];
    for (const [t, path, dash, tag] of [
        [zero, zeroPath, false, 'no coherence'],
        [amax, maxPath, true, 'maximal coherence'],
    ] as [Table, string, boolean, string][]) {
        const corr = series(t, 'delta', 'gamma_correlated', path);
        const unc = series(t, 'delta', 'gamma_uncorrelated', path);
        assertDominates(corr, unc, `correlated above uncorrelated (${tag})`);
        out.push(line(`correlated, ${tag}`, corr, ORANGE, dash));
        out.push(line(`uncorrelated, ${tag}`, unc, BLUE, dash));
    }
    return { ...axes('cis-trans gap', 'optimal yield'), series: out };
}

function fig7(inputs: string[]): ChartOption {
    const [asymPath, tdPath] = inputs;
    const asym = series(readCsv(asymPath), 'delta', 'gamma', asymPath);
    const td = series(readCsv(tdPath), 'delta', 'gamma', tdPath);
    const tdByX = new Map(td.map(([x, y]) => [x, y]));
    for (const [x, y] of asym) {
        const ref = tdByX.get(x);
        if (ref !== undefined && Math.abs(y - ref) > 0.02) {
            throw new OrderingError(`asymptotic yield strays from the limit at delta=${x}`);
        }
    }
    return {
        ...axes('cis-trans gap', 'optimal yield'),
        series: [
            line('correlated, 10^4 switches', asym, ORANGE),
            line('thermodynamic limit', td, BLACK, true),
        ],
    };
}

function fig8(inputs: string[]): ChartOption {
    const [w01Path, w001Path, threePath] = inputs;
    const w01 = series(readCsv(w01Path), 'delta', 'gamma', w01Path);
    const w001 = series(readCsv(w001Path), 'delta', 'gamma', w001Path);
    const three = series(readCsv(threePath), 'delta', 'gamma', threePath);
    assertDominates(w01, three, 'five-level above three-level (splitting 0.1)');
    assertDominates(w001, three, 'five-level above three-level (splitting 0.01)');
    return {
        ...axes('cis-trans gap', 'optimal yield'),
        series: [
            line('five-level, splitting 0.1', w01, ORANGE),
            line('five-level, splitting 0.01', w001, BLUE),
            line('three-level reference', three, BLACK, true),
        ],
    };
}

const BUILDERS: Record<FigureId, Builder> = { fig2, fig3, fig4, fig5, fig6, fig7, fig8 };

export function buildFigure(spec: FigureSpec): ChartOption {
    const builder = BUILDERS[spec.id];
    if (!builder) {
        throw new CsvError(`unknown figure id '${spec.id}'`);
    }
    const expected = INPUT_COUNTS[spec.id];
    if (spec.id !== 'fig4' && spec.inputs.length !== expected) {
        throw new CsvError(`${spec.id} expects ${expected} input CSV(s), got ${spec.inputs.length}`);
    }
    return builder(spec.inputs);
}
