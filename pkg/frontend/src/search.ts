/** Search panel: debounced keyword search plus paragraph-similarity posts. */

import { ApiClient, ApiError, SearchPayload } from "./api.js";
import { clear, el } from "./dom.js";

export interface SearchPanelOptions {
  client: ApiClient;
  debounceMs?: number;
  onHit?: (proposalId: string, itemId: string) => void;
  onPayload?: (payload: SearchPayload) => boolean; // snapshot guard; false = drop
}

export class SearchPanel {
  readonly root: HTMLElement;
  private readonly input: HTMLInputElement;
  private readonly paragraphInput: HTMLTextAreaElement;
  private readonly results: HTMLElement;
  private readonly message: HTMLElement;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private requestCounter = 0;
  requestsIssued = 0;

  constructor(private readonly options: SearchPanelOptions) {
    this.input = el("input", {
      class: "search-input",
      type: "search",
      placeholder: "keyword, e.g. fairness",
    });
    this.paragraphInput = el("textarea", {
      class: "paragraph-input hidden",
      rows: "4",
      placeholder: "paste a paragraph to find semantically similar principles",
    });
    this.results = el("div", { class: "search-results" });
    this.message = el("div", { class: "search-message" });
    const keywordRadio = this.modeRadio("keyword", "keyword", true);
    const paragraphRadio = this.modeRadio("paragraph", "paragraph", false);
    const submit = el("button", { class: "paragraph-submit hidden", type: "button" }, ["search"]);
    submit.addEventListener("click", () => void this.runParagraph());
    this.input.addEventListener("input", () => this.scheduleKeyword());
    this.root = el("div", { class: "search-panel" }, [
      el("div", { class: "search-modes" }, [keywordRadio.wrap, paragraphRadio.wrap]),
      this.input,
      this.paragraphInput,
      submit,
      this.message,
      this.results,
    ]);
    keywordRadio.input.addEventListener("change", () => this.setMode("keyword"));
    paragraphRadio.input.addEventListener("change", () => this.setMode("paragraph"));
    this.submitButton = submit;
  }

  private submitButton: HTMLButtonElement;

  private modeRadio(value: string, label: string, checked: boolean) {
    const input = el("input", { type: "radio", name: "search-mode", value });
    input.checked = checked;
    const wrap = el("label", { class: "mode" }, [input, label]);
    return { input, wrap };
  }

  setMode(mode: "keyword" | "paragraph"): void {
    this.input.classList.toggle("hidden", mode !== "keyword");
    this.paragraphInput.classList.toggle("hidden", mode !== "paragraph");
    this.submitButton.classList.toggle("hidden", mode !== "paragraph");
    clear(this.results);
    this.message.textContent = "";
  }

  /** Debounce keyword requests; an empty query issues no request at all. */
  private scheduleKeyword(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    const query = this.input.value.trim();
    if (!query) {
      clear(this.results);
      this.message.textContent = "";
      return;
    }
    this.timer = setTimeout(() => void this.runKeyword(query), this.options.debounceMs ?? 250);
  }

  private async runKeyword(query: string): Promise<void> {
    const ticket = ++this.requestCounter;
    this.requestsIssued += 1;
    try {
      const payload = await this.options.client.searchKeyword(query);
      if (ticket !== this.requestCounter) return; // superseded by a newer query
      this.apply(payload);
    } catch (err) {
      if (ticket === this.requestCounter) this.showError(err);
    }
  }

  async runParagraph(): Promise<void> {
    const text = this.paragraphInput.value.trim();
    if (!text) return;
    this.requestsIssued += 1;
    try {
      const payload = await this.options.client.searchParagraph(text);
      this.apply(payload);
    } catch (err) {
      this.showError(err);
    }
  }

  private showError(err: unknown): void {
    clear(this.results);
    this.message.textContent = err instanceof ApiError ? err.message : String(err);
    this.message.className = "search-message error";
  }

  private apply(payload: SearchPayload): void {
    if (this.options.onPayload && !this.options.onPayload(payload)) return;
    this.message.textContent = payload.hits.length ? "" : "no matches";
    this.message.className = "search-message";
    clear(this.results);
    const list = el("ol", { class: "hits" });
    for (const hit of payload.hits) {
      const link = el(
        "a",
        { class: "hit-link", href: `#detail/${hit.proposal_id}`, "data-item": hit.item_id },
        [`${hit.proposal_id} / ${hit.item_id}`],
      );
      if (this.options.onHit) {
        link.addEventListener("click", (event) => {
          event.preventDefault();
          this.options.onHit!(hit.proposal_id, hit.item_id);
        });
      }
      list.append(
        el("li", { class: "hit", "data-score": String(hit.score) }, [
          link,
          el("span", { class: "hit-score" }, [` ${hit.score}`]),
          el("div", { class: "hit-snippet" }, [hit.snippet]),
        ]),
      );
    }
    this.results.append(list);
  }
}
