/** Wire types mirroring the session service's JSON bodies. */

export interface ConstraintView {
  facet: string;
  value: string;
  mode: "in-turn" | "out-of-turn";
  step: number;
}

export interface LeafView {
  id: string;
  title: string;
  url: string;
  attributes: Record<string, string>;
}

export interface Summary {
  constraints: ConstraintView[];
  solicits: string | null;
  links: string[];
  remainingLeafCount: number;
  terminal: boolean;
  leaf: LeafView | null;
}

export interface SiteInfo {
  id: string;
  title: string;
  facets: string[];
  leafCount: number;
}

export interface SessionCreated {
  sessionId: string;
  summary: Summary;
}

export interface UtteranceResult {
  summary: Summary;
  tokens: string[];
}

export interface ErrorPayload {
  code: string;
  message: string;
  details: Record<string, unknown>;
}

export type WhatMayISay = Record<string, string[]>;
