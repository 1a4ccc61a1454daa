// Client-side mirror of the server's threshold tests, one comparison
// per study, so slider feedback needs no network round trip. The
// server stays the oracle: the contract test checks this module
// against POST /api/classify over a grid of thresholds.

import type { Decision, StudyRecord } from "./api.js";

/** Strict test: negligible iff ms_pct/100 < delta. */
export function testNegligible(msPct: number, delta: number): boolean {
  if (!(delta > 0)) {
    throw new RangeError("negligible threshold must be positive");
  }
  return msPct / 100 < delta;
}

/** Strict test: meaningful iff ls_pct/100 > deltaMeaningful. */
export function testMeaningful(lsPct: number, deltaMeaningful: number): boolean {
  if (!(deltaMeaningful > 0)) {
    throw new RangeError("meaningful threshold must be positive");
  }
  return lsPct / 100 > deltaMeaningful;
}

export function classifyAll(
  studies: StudyRecord[],
  delta: number,
  deltaMeaningful: number | null = null,
): Decision[] {
  return studies.map((s) => ({
    id: s.id,
    negligible: testNegligible(s.ms_pct, delta),
    meaningful:
      deltaMeaningful === null ? null : testMeaningful(s.ls_pct, deltaMeaningful),
  }));
}

export function negligibleIds(decisions: Decision[]): Set<number> {
  return new Set(decisions.filter((d) => d.negligible).map((d) => d.id));
}
