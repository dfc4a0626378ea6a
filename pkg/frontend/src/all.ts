/**
 * Render every figure from a data directory of sweep CSVs:
 *   node dist/src/all.js <data-dir> <output-dir>
 */

import * as path from 'path';

import { FigureId } from './figures';
import { renderFigure } from './render';

const FILES: Record<FigureId, string[]> = {
    fig2: ['fig2_correlated_n2.csv', 'fig2_uncorrelated_n2.csv', 'fig2_single.csv'],
    fig3: ['fig3_mutualinfo.csv'],
    fig4: ['fig2_correlated_n2.csv', 'fig2_uncorrelated_n2.csv',
           'fig4_correlated_n10.csv', 'fig4_uncorrelated_n10.csv',
           'fig4_correlated_n50.csv', 'fig4_uncorrelated_n50.csv'],
    fig5: ['fig5_advantage.csv'],
    fig6: ['fig6_alpha0.csv', 'fig6_alphamax.csv'],
    fig7: ['fig7_asymptotic_n1e4.csv', 'fig7_td.csv'],
    fig8: ['fig8_fivelevel_w01.csv', 'fig8_fivelevel_w001.csv', 'fig8_threelevel.csv'],
};

function main(argv: string[]): number {
    if (argv.length !== 2) {
        process.stderr.write('usage: all <data-dir> <output-dir>\n');
        return 2;
    }
    const [dataDir, outDir] = argv;
    for (const [id, names] of Object.entries(FILES) as [FigureId, string[]][]) {
        try {
            renderFigure({
                id,
                inputs: names.map((n) => path.join(dataDir, n)),
                output: path.join(outDir, `${id}.svg`),
            });
            process.stdout.write(`${id}.svg written\n`);
        } catch (err) {
            process.stderr.write(`${id}: ${(err as Error).message}\n`);
            return 1;
        }
    }
    return 0;
}

process.exitCode = main(process.argv.slice(2));
