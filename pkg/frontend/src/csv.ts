/**
 * Strict reader for the sweep CSVs: one header line, numeric cells only,
 * no quoting. Anything else is a hard error — these files are machine
 * generated and silence would hide upstream breakage.
 */

import * as fs from 'fs';

export interface Table {
    columns: string[];
    rows: number[][];
}

export class CsvError extends Error {}

export function readCsv(path: string): Table {
    let text: string;
    try {
        text = fs.readFileSync(path, 'utf-8');
    } catch (err) {
        throw new CsvError(`cannot read ${path}: ${(err as Error).message}`);
    }
    const lines = text.split('\n').filter((l) => l.length > 0);
    if (lines.length === 0) {
        throw new CsvError(`${path}: empty file`);
    }
    const columns = lines[0].split(',');
    if (lines.length === 1) {
        throw new CsvError(`${path}: no data rows`);
    }
    const rows: number[][] = [];
    for (let i = 1; i < lines.length; i++) {
        const cells = lines[i].split(',');
        if (cells.length !== columns.length) {
            throw new CsvError(`${path}:${i + 1}: expected ${columns.length} cells, got ${cells.length}`);
        }
        const row = cells.map((c) => {
            const v = Number(c);
            if (!Number.isFinite(v)) {
                throw new CsvError(`${path}:${i + 1}: non-numeric cell '${c}'`);
            }
            return v;
        });
        rows.push(row);
    }
    return { columns, rows };
}

export function column(table: Table, name: string, path = '<table>'): number[] {
    const idx = table.columns.indexOf(name);
    if (idx < 0) {
        throw new CsvError(`${path}: missing column '${name}' (have: ${table.columns.join(', ')})`);
    }
    return table.rows.map((r) => r[idx]);
}

/** Pairs (x, y) sorted by x, for line series. */
export function series(table: Table, xName: string, yName: string, path?: string): [number, number][] {
    const xs = column(table, xName, path);
    const ys = column(table, yName, path);
    return xs.map((x, i) => [x, ys[i]] as [number, number]).sort((a, b) => a[0] - b[0]);
}
