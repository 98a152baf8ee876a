/** Browser entry point: wires the API client, session and DOM together. */

import { ConsoleApi } from "./api.js";
import { catalogFor, Locale } from "./messages.js";
import { mountConsole } from "./render.js";
import { ConsoleSession } from "./session.js";

interface ConsoleConfig {
  baseUrl?: string;
  raterId?: string;
  locale?: Locale;
}

declare global {
  interface Window {
    CONSOLE_CONFIG?: ConsoleConfig;
  }
}

export function start(root: HTMLElement, config: ConsoleConfig = {}): void {
  const api = new ConsoleApi(config.baseUrl ?? "");
  const session = new ConsoleSession(api, config.raterId ?? "console");
  mountConsole(root, session, catalogFor(config.locale ?? "en"));
}

const container = document.getElementById("app");
if (container) {
  start(container, window.CONSOLE_CONFIG ?? {});
}
