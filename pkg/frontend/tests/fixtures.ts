import type { Summary } from "../src/types.js";

export function freshSummary(): Summary {
  return {
    constraints: [],
    solicits: "state",
    links: ["Alaska", "American Samoa", "Georgia"],
    remainingLeafCount: 8,
    terminal: false,
    leaf: null,
  };
}

export function prunedSummary(): Summary {
  return {
    constraints: [
      { facet: "party", value: "Democrat", mode: "out-of-turn", step: 1 },
      { facet: "branch", value: "Senate", mode: "out-of-turn", step: 2 },
    ],
    solicits: "state",
    links: ["Georgia"],
    remainingLeafCount: 1,
    terminal: false,
    leaf: null,
  };
}

export function terminalSummary(): Summary {
  return {
    constraints: [
      { facet: "party", value: "Democrat", mode: "out-of-turn", step: 1 },
      { facet: "branch", value: "Senate", mode: "out-of-turn", step: 2 },
      { facet: "state", value: "Georgia", mode: "in-turn", step: 3 },
    ],
    solicits: null,
    links: [],
    remainingLeafCount: 1,
    terminal: true,
    leaf: {
      id: "GA-SS",
      title: "Senior Senator from Georgia",
      url: "https://example.gov/officials/GA-SS",
      attributes: { state: "Georgia", branch: "Senate", party: "Democrat", seat: "Senior" },
    },
  };
}
