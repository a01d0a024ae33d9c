import type { ErrorPayload, Summary, WhatMayISay } from "./types.js";

/** Everything the page renders; the UI derives nothing else. */
export interface ViewState {
  siteTitle: string;
  summary: Summary | null;
  pendingInput: string;
  lastError: ErrorPayload | null;
  whatMayISay: WhatMayISay | null;
  busy: boolean;
}

export function initialState(): ViewState {
  return {
    siteTitle: "",
    summary: null,
    pendingInput: "",
    lastError: null,
    whatMayISay: null,
    busy: false,
  };
}

type Listener = (state: ViewState) => void;

/**
 * Tiny observable store with a per-request sequence guard: responses that
 * arrive after a newer request has been issued are dropped, so a slow
 * reply can never clobber fresher session state.
 */
export class Store {
  private state: ViewState = initialState();
  private listeners: Listener[] = [];
  private sequence = 0;

  get(): ViewState {
    return this.state;
  }

  update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  /** Mark the start of a request; pair with isCurrent on completion. */
  nextRequest(): number {
    this.sequence += 1;
    return this.sequence;
  }

  isCurrent(token: number): boolean {
    return token === this.sequence;
  }
}
