// Bundle loading over static file serving (fetch).

import { buildPresentation, type Manifest, type Presentation, type ProjectJson } from "./model.js";

async function fetchJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) throw new Error(`failed to load ${url}: HTTP ${response.status}`);
  return (await response.json()) as T;
}

/**
 * Load a bundle directory (manifest.json + project.json + assets/) from a
 * base URL. Asset URLs resolve inside the bundle; callers render missing
 * assets as placeholders.
 */
export async function loadBundle(baseUrl: string): Promise<Presentation> {
  const base = baseUrl.replace(/\/$/, "");
  const manifest = await fetchJson<Manifest>(`${base}/manifest.json`);
  const project = await fetchJson<ProjectJson>(`${base}/${manifest.project}`);
  return buildPresentation(manifest, project, (path) => `${base}/${path}`);
}
