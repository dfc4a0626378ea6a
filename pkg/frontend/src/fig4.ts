import { figureMain } from './render';

process.exitCode = figureMain('fig4', process.argv.slice(2));
