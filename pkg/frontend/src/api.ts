// Typed client for the three read-only endpoints exposed by the
// analysis server. The UI performs all threshold work client-side;
// the server is only contacted for the initial study load, the
// rendered plot, and (in tests) as the classification oracle.

export interface StudyRecord {
  id: number;
  study_label: string;
  year: number;
  group_x_label: string;
  group_y_label: string;
  mean_x: number;
  sd_x: number;
  n_x: number;
  mean_y: number;
  sd_y: number;
  n_y: number;
  units: string;
  alpha_dm: number;
  species: string;
  pmid: string;
  loc: string;
  reported_sign: number;
  point_estimate: number;
  ci_lo: number;
  ci_hi: number;
  ls_pct: number;
  ms_pct: number;
  credible_level: number;
  k: number;
  seed: number;
}

export interface Decision {
  id: number;
  negligible: boolean;
  meaningful: boolean | null;
}

export interface ClassifyResponse {
  negligible_threshold: number;
  meaningful_threshold: number | null;
  decisions: Decision[];
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function checked(resp: Response): Promise<Response> {
  if (!resp.ok) {
    throw new ApiError(resp.status, `${resp.status} ${resp.statusText}`);
  }
  return resp;
}

export class ApiClient {
  constructor(private baseUrl: string) {}

  async getStudies(): Promise<StudyRecord[]> {
    const resp = await checked(await fetch(`${this.baseUrl}/api/studies`));
    return resp.json();
  }

  async classify(
    delta: number,
    deltaMeaningful: number | null = null,
  ): Promise<ClassifyResponse> {
    const body: Record<string, number> = { negligible_threshold: delta };
    if (deltaMeaningful !== null) {
      body.meaningful_threshold = deltaMeaningful;
    }
    const resp = await checked(
      await fetch(`${this.baseUrl}/api/classify`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      }),
    );
    return resp.json();
  }

  plotUrl(delta: number | null, deltaMeaningful: number | null = null): string {
    const params = new URLSearchParams();
    if (delta !== null) params.set("negligible_threshold", String(delta));
    if (deltaMeaningful !== null) {
      params.set("meaningful_threshold", String(deltaMeaningful));
    }
    const query = params.toString();
    return `${this.baseUrl}/api/plot.svg${query ? "?" + query : ""}`;
  }
}
