import type { ViewState } from "./state.js";
import type { ConstraintView } from "./types.js";

/** Callbacks the rendered controls invoke; the view owns no state. */
export interface Handlers {
  onLink(label: string): void;
  onUtter(text: string): void;
  onBack(): void;
  onWhatMayISay(): void;
  onInput(text: string): void;
}

export function constraintText(constraint: ConstraintView): string {
  return `${constraint.facet}=${constraint.value} (${constraint.mode})`;
}

export function inputSoFarText(constraints: ConstraintView[]): string {
  if (constraints.length === 0) {
    return "Input so far: (none)";
  }
  return `Input so far: ${constraints.map(constraintText).join(", ")}`;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

/** Rebuild the page from the view state; every displayed fact comes from it. */
export function render(root: HTMLElement, state: ViewState, handlers: Handlers): void {
  root.textContent = "";
  root.setAttribute("aria-busy", String(state.busy));

  const title = el("h1", {}, state.siteTitle || "extempore");
  root.append(title);

  const toolbar = el("div", { class: "toolbar" });
  const form = el("form", { "data-role": "utterance-form" });
  const input = el("input", {
    "data-role": "utterance-input",
    placeholder: "volunteer something out of turn",
  });
  input.value = state.pendingInput;
  input.addEventListener("input", () => handlers.onInput(input.value));
  const submit = el("button", { "data-role": "utterance-submit", type: "submit" }, "Say");
  form.append(input, submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    handlers.onUtter(input.value);
  });
  const wmisButton = el("button", { "data-role": "wmis-button", title: "What may I say?" }, "?");
  wmisButton.addEventListener("click", () => handlers.onWhatMayISay());
  const backButton = el("button", { "data-role": "back-button" }, "Back");
  backButton.addEventListener("click", () => handlers.onBack());
  toolbar.append(form, wmisButton, backButton);
  root.append(toolbar);

  if (state.lastError) {
    const banner = el("div", { "data-role": "error", class: "error" });
    banner.append(
      el("strong", {}, state.lastError.code),
      el("span", {}, ` ${state.lastError.message}`),
    );
    const suggestions = state.lastError.details["suggestions"];
    if (Array.isArray(suggestions) && suggestions.length > 0) {
      banner.append(el("span", { "data-role": "suggestions" }, ` try: ${suggestions.join(", ")}`));
    }
    root.append(banner);
  }

  const main = el("main");
  const summary = state.summary;
  if (summary === null) {
    main.append(el("p", {}, "Connecting…"));
  } else if (summary.terminal && summary.leaf) {
    const leaf = summary.leaf;
    const panel = el("section", { "data-role": "leaf" });
    panel.append(el("h2", {}, leaf.title));
    const link = el("a", { href: leaf.url, "data-role": "leaf-url" }, leaf.url);
    panel.append(link);
    const attrs = el("dl");
    for (const [facet, value] of Object.entries(leaf.attributes)) {
      attrs.append(el("dt", {}, facet), el("dd", {}, value));
    }
    panel.append(attrs);
    main.append(panel);
  } else {
    if (summary.solicits) {
      main.append(el("p", { "data-role": "solicits" }, `Choose a ${summary.solicits}:`));
    }
    const list = el("ul", { "data-role": "links" });
    for (const label of summary.links) {
      const item = el("li");
      const button = el("button", { "data-role": "link" }, label);
      button.addEventListener("click", () => handlers.onLink(label));
      item.append(button);
      list.append(item);
    }
    main.append(list);
  }
  root.append(main);

  if (state.whatMayISay) {
    const panel = el("aside", { "data-role": "wmis-panel" });
    panel.append(el("h2", {}, "What may I say?"));
    for (const [facet, values] of Object.entries(state.whatMayISay)) {
      const group = el("section", { "data-role": "wmis-facet", "data-facet": facet });
      group.append(el("h3", {}, facet));
      const list = el("ul");
      for (const value of values) {
        const item = el("li");
        const button = el("button", { "data-role": "wmis-value" }, value);
        button.addEventListener("click", () => handlers.onUtter(value));
        item.append(button);
        list.append(item);
      }
      group.append(list);
      panel.append(group);
    }
    root.append(panel);
  }

  const status = el("footer", { class: "statusbar" });
  status.append(
    el(
      "span",
      { "data-role": "input-so-far" },
      inputSoFarText(summary ? summary.constraints : []),
    ),
  );
  if (summary) {
    status.append(
      el("span", { "data-role": "remaining" }, `${summary.remainingLeafCount} pages remain`),
    );
  }
  root.append(status);
}
