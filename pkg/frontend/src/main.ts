import { ExtemporeClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app mount point");
}
const params = new URLSearchParams(window.location.search);
const app = new App(new ExtemporeClient(), root);
void app.start(params.get("site") ?? undefined).catch((error) => {
  root.textContent = `failed to start: ${error instanceof Error ? error.message : error}`;
});
