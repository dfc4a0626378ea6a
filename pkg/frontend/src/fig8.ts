import { figureMain } from './render';

process.exitCode = figureMain('fig8', process.argv.slice(2));
