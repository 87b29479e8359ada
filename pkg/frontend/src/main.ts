import { ApiClient } from './api.js';
import { RooflineApp } from './app.js';

// default: the service's default port; override with ?api=http://host:port
const params = new URLSearchParams(window.location.search);
const base = params.get('api') ?? 'http://127.0.0.1:8080';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');

void new RooflineApp(root, new ApiClient(base)).init();
