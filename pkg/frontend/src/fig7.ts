import { figureMain } from './render';

process.exitCode = figureMain('fig7', process.argv.slice(2));
