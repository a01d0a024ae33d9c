import { ApiError, ExtemporeClient } from "./api.js";
import { Store } from "./state.js";
import { render, type Handlers } from "./view.js";
import type { Summary } from "./types.js";

/**
 * Controller for one session per page. All pruning happens server-side;
 * this class only moves responses into the store and re-renders.
 *
 * Behavior contract:
 * - on success the summary is replaced, the error banner clears, and the
 *   text box clears;
 * - on a 422 the summary is untouched and the error is shown inline;
 * - on a network failure the state is preserved under a retriable banner;
 * - Back always means the session's back endpoint, never browser history.
 */
export class App {
  readonly store = new Store();
  private sessionId: string | null = null;

  constructor(
    private readonly client: ExtemporeClient,
    private readonly root: HTMLElement,
  ) {
    this.store.subscribe((state) => render(this.root, state, this.handlers));
  }

  private readonly handlers: Handlers = {
    onLink: (label) => void this.interact(() => this.client.click(this.session(), label)),
    onUtter: (text) => {
      const trimmed = text.trim();
      if (trimmed.length > 0) {
        void this.interact(() => this.utteranceSummary(trimmed));
      }
    },
    onBack: () => void this.interact(() => this.client.back(this.session())),
    onWhatMayISay: () => void this.loadWhatMayISay(),
    onInput: (text) => this.store.update({ pendingInput: text }),
  };

  private session(): string {
    if (this.sessionId === null) {
      throw new Error("no active session");
    }
    return this.sessionId;
  }

  private async utteranceSummary(text: string): Promise<Summary> {
    const result = await this.client.utter(this.session(), text);
    return result.summary;
  }

  async start(siteId?: string): Promise<void> {
    const sites = await this.client.listSites();
    const site = siteId ? sites.find((s) => s.id === siteId) : sites[0];
    if (!site) {
      throw new Error(`no such site: ${siteId ?? "(none available)"}`);
    }
    const created = await this.client.createSession(site.id);
    this.sessionId = created.sessionId;
    this.store.update({ siteTitle: site.title, summary: created.summary });
  }

  /** Run one interaction with the stale-response guard and error policy. */
  private async interact(call: () => Promise<Summary>): Promise<void> {
    const token = this.store.nextRequest();
    this.store.update({ busy: true });
    try {
      const summary = await call();
      if (!this.store.isCurrent(token)) {
        return; // superseded by a newer interaction
      }
      this.store.update({
        summary,
        lastError: null,
        pendingInput: "",
        whatMayISay: null,
        busy: false,
      });
    } catch (error) {
      if (!this.store.isCurrent(token)) {
        return;
      }
      if (error instanceof ApiError) {
        this.store.update({ lastError: error.payload, busy: false });
      } else {
        this.store.update({
          lastError: {
            code: "network",
            message: "request failed; the session is unchanged - retry",
            details: {},
          },
          busy: false,
        });
      }
    }
  }

  private async loadWhatMayISay(): Promise<void> {
    const token = this.store.nextRequest();
    try {
      const values = await this.client.whatMayISay(this.session());
      if (this.store.isCurrent(token)) {
        this.store.update({ whatMayISay: values, lastError: null });
      }
    } catch (error) {
      if (!this.store.isCurrent(token)) {
        return;
      }
      const payload =
        error instanceof ApiError
          ? error.payload
          : { code: "network", message: "request failed - retry", details: {} };
      this.store.update({ lastError: payload });
    }
  }
}
