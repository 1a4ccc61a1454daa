// DOM wiring: a delta slider + numeric input, the study table with
// negligible rows highlighted, a metadata detail panel, and the
// server-rendered plot. All threshold work happens client-side; the
// only fetches are the initial study load and plot refreshes.

import { ApiClient } from "./api.js";
import {
  ViewState,
  initialState,
  onThresholdChange,
  selectStudy,
  selectedStudy,
  withError,
  withStudies,
} from "./state.js";

const SERVER_URL =
  new URLSearchParams(location.search).get("server") ?? "http://127.0.0.1:8000";

const api = new ApiClient(SERVER_URL);
let state: ViewState = initialState();

const el = (id: string) => document.getElementById(id)!;

function renderTable(): void {
  const tbody = el("study-rows");
  tbody.textContent = "";
  const negligible = new Set(
    state.decisions.filter((d) => d.negligible).map((d) => d.id),
  );
  for (const s of state.studies) {
    const tr = document.createElement("tr");
    tr.className = negligible.has(s.id) ? "negligible" : "";
    if (s.id === state.selectedStudyId) tr.classList.add("selected");
    const cells = [
      String(s.id), s.study_label, String(s.year),
      s.ls_pct.toFixed(1), s.ms_pct.toFixed(1),
      negligible.has(s.id) ? "yes" : "no",
    ];
    for (const text of cells) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    tr.addEventListener("click", () => {
      state = selectStudy(state, s.id);
      render();
    });
    tbody.appendChild(tr);
  }
  el("row-count").textContent = `${state.studies.length} studies, ` +
    `${negligible.size} negligible at δ = ${state.delta}`;
}

function renderDetail(): void {
  const panel = el("detail");
  const s = selectedStudy(state);
  if (!s) {
    panel.hidden = true;
    return;
  }
  panel.hidden = false;
  const interval =
    `(${(100 * s.ci_lo).toFixed(2)}%, ${(100 * s.ci_hi).toFixed(2)}%)`;
  el("detail-body").textContent = [
    `${s.study_label} ${s.year} (id ${s.id})`,
    `PMID ${s.pmid} · ${s.loc} · ${s.species}`,
    `${s.group_x_label}: ${s.mean_x} ± ${s.sd_x} ${s.units} (n=${s.n_x})`,
    `${s.group_y_label}: ${s.mean_y} ± ${s.sd_y} ${s.units} (n=${s.n_y})`,
    `${(100 * s.credible_level).toFixed(1)}% interval ${interval}`,
    `Ls% ${s.ls_pct.toFixed(2)} · Ms% ${s.ms_pct.toFixed(2)}`,
  ].join("\n");
}

function renderPlot(): void {
  if (state.studies.length === 0) return;
  (el("plot") as HTMLImageElement).src = api.plotUrl(state.delta);
}

function renderError(): void {
  const banner = el("error-banner");
  banner.hidden = state.error === null;
  if (state.error !== null) {
    el("error-text").textContent = state.error;
  }
}

function render(): void {
  renderError();
  renderTable();
  renderDetail();
  renderPlot();
}

function setDelta(raw: string): void {
  const delta = Number(raw);
  const next = onThresholdChange(state, delta);
  const rejected = next === state && state.studies.length > 0;
  el("delta-invalid").hidden = !rejected;
  if (next === state) return;
  state = next;
  (el("delta-slider") as HTMLInputElement).value = String(state.delta);
  (el("delta-input") as HTMLInputElement).value = String(state.delta);
  render();
}

export async function loadSession(): Promise<void> {
  try {
    state = withStudies(state, await api.getStudies());
  } catch (err) {
    state = withError(state, `cannot reach server at ${SERVER_URL}: ${err}`);
  }
  render();
}

export function init(): void {
  const slider = el("delta-slider") as HTMLInputElement;
  const input = el("delta-input") as HTMLInputElement;
  slider.value = input.value = String(state.delta);
  slider.addEventListener("input", () => setDelta(slider.value));
  input.addEventListener("change", () => setDelta(input.value));
  el("retry").addEventListener("click", () => void loadSession());
  void loadSession();
}

init();
