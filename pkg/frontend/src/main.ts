// Browser entry point: respondent token handling and controller wiring.

import { SurveyApi } from "./api.js";
import { Handlers, render } from "./dom.js";
import { SurveyController } from "./survey.js";

const TOKEN_KEY = "annotrust-respondent";

export function respondentToken(storage: Storage): string {
  const existing = storage.getItem(TOKEN_KEY);
  if (existing) return existing;
  const token = `r-${crypto.randomUUID()}`;
  storage.setItem(TOKEN_KEY, token);
  return token;
}

export function boot(container: HTMLElement, baseUrl = ""): SurveyController {
  const api = new SurveyApi(baseUrl);
  const respondent = respondentToken(window.localStorage);
  const handlers: Handlers = {
    onSelect: (index) => controller.select(index),
    onSubmit: () => void controller.submit(),
    onRetry: () => void controller.retry(),
  };
  const controller = new SurveyController(api, respondent, (view) =>
    render(container, view, handlers),
  );
  void controller.start();
  return controller;
}

declare global {
  interface Window {
    ANNOTRUST_API?: string;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot(document.getElementById("app")!, window.ANNOTRUST_API ?? "");
}
