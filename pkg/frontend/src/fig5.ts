import { figureMain } from './render';

process.exitCode = figureMain('fig5', process.argv.slice(2));
