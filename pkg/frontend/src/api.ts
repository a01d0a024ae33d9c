import type {
  ErrorPayload,
  SessionCreated,
  SiteInfo,
  Summary,
  UtteranceResult,
  WhatMayISay,
} from "./types.js";

/** A non-2xx response whose body carried the service's error envelope. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ErrorPayload,
  ) {
    super(payload.message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: init?.body ? { "Content-Type": "application/json" } : undefined,
    ...init,
  });
  if (!response.ok) {
    let payload: ErrorPayload = {
      code: `http-${response.status}`,
      message: response.statusText || `request failed (${response.status})`,
      details: {},
    };
    try {
      const body = await response.json();
      if (body && typeof body === "object" && "error" in body) {
        payload = (body as { error: ErrorPayload }).error;
      }
    } catch {
      // non-JSON error body: keep the synthesized payload
    }
    throw new ApiError(response.status, payload);
  }
  return (await response.json()) as T;
}

/** Thin typed client; all state lives server-side. */
export class ExtemporeClient {
  constructor(private readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  listSites(): Promise<SiteInfo[]> {
    return request(this.url("/sites"));
  }

  createSession(siteId: string): Promise<SessionCreated> {
    return request(this.url("/sessions"), {
      method: "POST",
      body: JSON.stringify({ siteId }),
    });
  }

  getSummary(sessionId: string): Promise<Summary> {
    return request(this.url(`/sessions/${sessionId}`));
  }

  click(sessionId: string, label: string): Promise<Summary> {
    return request(this.url(`/sessions/${sessionId}/click`), {
      method: "POST",
      body: JSON.stringify({ label }),
    });
  }

  utter(sessionId: string, text: string): Promise<UtteranceResult> {
    return request(this.url(`/sessions/${sessionId}/utterance`), {
      method: "POST",
      body: JSON.stringify({ text }),
    });
  }

  back(sessionId: string): Promise<Summary> {
    return request(this.url(`/sessions/${sessionId}/back`), {
      method: "POST",
    });
  }

  whatMayISay(sessionId: string): Promise<WhatMayISay> {
    return request(this.url(`/sessions/${sessionId}/what-may-i-say`));
  }

  getLog(sessionId: string): Promise<unknown> {
    return request(this.url(`/sessions/${sessionId}/log`));
  }
}
