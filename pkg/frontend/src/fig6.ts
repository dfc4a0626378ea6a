import { figureMain } from './render';

process.exitCode = figureMain('fig6', process.argv.slice(2));
