// View state and its transitions, kept free of DOM so they are
// directly unit-testable. Invariant: `decisions` always correspond to
// the displayed `delta` -- every transition that changes delta
// recomputes them in the same step.

import type { Decision, StudyRecord } from "./api.js";
import { classifyAll } from "./classify.js";

export const DEFAULT_DELTA = 0.3;

export interface ViewState {
  studies: StudyRecord[];
  delta: number;
  deltaMeaningful: number | null;
  decisions: Decision[];
  selectedStudyId: number | null;
  error: string | null;
}

export function initialState(): ViewState {
  return {
    studies: [],
    delta: DEFAULT_DELTA,
    deltaMeaningful: null,
    decisions: [],
    selectedStudyId: null,
    error: null,
  };
}

export function withStudies(state: ViewState, studies: StudyRecord[]): ViewState {
  return {
    ...state,
    studies,
    decisions: classifyAll(studies, state.delta, state.deltaMeaningful),
    error: null,
  };
}

export function withError(state: ViewState, message: string): ViewState {
  return { ...state, studies: [], decisions: [], error: message };
}

/** Reject nonpositive or non-finite input; otherwise reclassify. */
export function onThresholdChange(state: ViewState, delta: number): ViewState {
  if (!Number.isFinite(delta) || delta <= 0) {
    return state;
  }
  return {
    ...state,
    delta,
    decisions: classifyAll(state.studies, delta, state.deltaMeaningful),
  };
}

export function onMeaningfulChange(
  state: ViewState,
  deltaMeaningful: number | null,
): ViewState {
  if (deltaMeaningful !== null &&
      (!Number.isFinite(deltaMeaningful) || deltaMeaningful <= 0)) {
    return state;
  }
  return {
    ...state,
    deltaMeaningful,
    decisions: classifyAll(state.studies, state.delta, deltaMeaningful),
  };
}

/** Unknown ids are a no-op; reselecting the current id deselects. */
export function selectStudy(state: ViewState, id: number | null): ViewState {
  if (id === null || id === state.selectedStudyId) {
    return { ...state, selectedStudyId: null };
  }
  if (!state.studies.some((s) => s.id === id)) {
    return state;
  }
  return { ...state, selectedStudyId: id };
}

export function selectedStudy(state: ViewState): StudyRecord | null {
  return state.studies.find((s) => s.id === state.selectedStudyId) ?? null;
}
