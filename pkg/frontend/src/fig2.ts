import { figureMain } from './render';

process.exitCode = figureMain('fig2', process.argv.slice(2));
