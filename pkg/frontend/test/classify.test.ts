import { describe, expect, it } from "vitest";

import type { StudyRecord } from "../src/api.js";
import { classifyAll, negligibleIds, testMeaningful, testNegligible } from "../src/classify.js";

function study(id: number, msPct: number, lsPct = 0): StudyRecord {
  return {
    id, study_label: "S", year: 2020, group_x_label: "ctrl",
    group_y_label: "tx", mean_x: 100, sd_x: 10, n_x: 10,
    mean_y: 110, sd_y: 10, n_y: 10, units: "mg/dL", alpha_dm: 0.05,
    species: "ms", pmid: "0", loc: "T1", reported_sign: 0,
    point_estimate: 0.1, ci_lo: -0.05, ci_hi: 0.2,
    ls_pct: lsPct, ms_pct: msPct, credible_level: 0.95, k: 1000, seed: 1,
  };
}

describe("testNegligible", () => {
  it("is a strict inequality", () => {
    expect(testNegligible(29.999, 0.3)).toBe(true);
    expect(testNegligible(30.0, 0.3)).toBe(false);
    expect(testNegligible(30.001, 0.3)).toBe(false);
  });

  it("rejects nonpositive thresholds", () => {
    expect(() => testNegligible(10, 0)).toThrow(RangeError);
    expect(() => testNegligible(10, -0.1)).toThrow(RangeError);
    expect(() => testNegligible(10, NaN)).toThrow(RangeError);
  });
});

describe("testMeaningful", () => {
  it("is a strict inequality on the near bound", () => {
    expect(testMeaningful(0, 0.05)).toBe(false);
    expect(testMeaningful(10.0, 0.1)).toBe(false);
    expect(testMeaningful(10.001, 0.1)).toBe(true);
  });

  it("rejects nonpositive thresholds", () => {
    expect(() => testMeaningful(10, 0)).toThrow(RangeError);
  });
});

describe("classifyAll", () => {
  const studies = [study(1, 12), study(2, 31), study(3, 8, 20)];

  it("classifies each study independently", () => {
    const decisions = classifyAll(studies, 0.3);
    expect(negligibleIds(decisions)).toEqual(new Set([1, 3]));
    expect(decisions.every((d) => d.meaningful === null)).toBe(true);
  });

  it("fills meaningful when a second threshold is given", () => {
    const decisions = classifyAll(studies, 0.3, 0.1);
    expect(decisions.find((d) => d.id === 3)?.meaningful).toBe(true);
    expect(decisions.find((d) => d.id === 1)?.meaningful).toBe(false);
  });

  it("negligible set grows monotonically with delta", () => {
    let previous = new Set<number>();
    for (const delta of [0.05, 0.1, 0.15, 0.32, 0.5]) {
      const current = negligibleIds(classifyAll(studies, delta));
      for (const id of previous) expect(current.has(id)).toBe(true);
      previous = current;
    }
    expect(previous).toEqual(new Set([1, 2, 3]));
  });

  it("unhighlights a study at exactly its ms_pct/100", () => {
    const target = study(7, 25);
    const at = classifyAll([target], 0.25)[0];
    const justAbove = classifyAll([target], 0.250001)[0];
    expect(at.negligible).toBe(false);
    expect(justAbove.negligible).toBe(true);
  });
});
