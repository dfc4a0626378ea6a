import { figureMain } from './render';

process.exitCode = figureMain('fig3', process.argv.slice(2));
