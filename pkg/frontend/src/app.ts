/** Application wiring: navigation, fetch + guard + render loop, error banner. */

import { ApiClient, ApiError } from "./api.js";
import { renderDetail } from "./detail.js";
import { clear, el } from "./dom.js";
import { renderGroups } from "./groups.js";
import { renderHeatmap } from "./heatmap.js";
import { renderRankings } from "./rankings.js";
import { SearchPanel } from "./search.js";
import { SnapshotGuard, ViewState, initialState, ViewName } from "./state.js";

export class App {
  readonly state: ViewState = initialState();
  private readonly guard: SnapshotGuard;
  private readonly banner: HTMLElement;
  private readonly content: HTMLElement;
  private readonly searchPanel: SearchPanel;

  constructor(root: HTMLElement, private readonly client: ApiClient = new ApiClient()) {
    this.banner = el("div", { class: "banner hidden" });
    this.content = el("main", { class: "content" });
    this.guard = new SnapshotGuard(this.state, () => this.showReloadPrompt());
    this.searchPanel = new SearchPanel({
      client: this.client,
      onHit: (proposalId, itemId) => void this.openDetail(proposalId, itemId),
      onPayload: (payload) => this.guard.accept(payload),
    });
    root.append(this.banner, this.buildNav(), this.content);
  }

  private buildNav(): HTMLElement {
    const views: [ViewName, string][] = [
      ["heatmap", "Heatmap"],
      ["rankings", "Rankings"],
      ["groups", "Groups"],
      ["search", "Search"],
    ];
    const nav = el("nav", { class: "nav" });
    for (const [view, label] of views) {
      const button = el("button", { class: "navbtn", "data-view": view }, [label]);
      button.addEventListener("click", () => void this.show(view));
      nav.append(button);
    }
    const granularity = el("select", { class: "granularity" }, [
      el("option", { value: "topic" }, ["topics"]),
      el("option", { value: "keyword" }, ["keywords"]),
    ]);
    granularity.addEventListener("change", () => {
      this.state.granularity = granularity.value as "topic" | "keyword";
      if (this.state.view === "heatmap" || this.state.view === "rankings") {
        void this.show(this.state.view);
      }
    });
    nav.append(granularity);
    return nav;
  }

  private showReloadPrompt(): void {
    this.banner.className = "banner reload";
    this.banner.textContent =
      "The service snapshot changed; reload the page to get a consistent view.";
    const reload = el("button", { class: "reloadbtn" }, ["reload"]);
    reload.addEventListener("click", () => location.reload());
    this.banner.append(" ", reload);
  }

  private showError(err: unknown): void {
    this.banner.className = "banner error";
    this.banner.textContent = err instanceof ApiError ? `API error: ${err.message}` : String(err);
    clear(this.content); // never leave a stale render under an error banner
  }

  private clearBanner(): void {
    if (!this.banner.classList.contains("reload")) {
      this.banner.className = "banner hidden";
      this.banner.textContent = "";
    }
  }

  async show(view: ViewName): Promise<void> {
    this.state.view = view;
    try {
      switch (view) {
        case "heatmap": {
          const payload = await this.client.coverage(this.state.granularity);
          if (!this.guard.accept(payload)) return;
          this.clearBanner();
          renderHeatmap(this.content, payload, {
            onCell: (proposalId) => void this.openDetail(proposalId, null),
          });
          break;
        }
        case "rankings": {
          const payload = await this.client.rankings(this.state.granularity);
          if (!this.guard.accept(payload)) return;
          this.clearBanner();
          renderRankings(this.content, payload, (pid) => void this.openDetail(pid, null));
          break;
        }
        case "groups": {
          const payload = await this.client.groups();
          if (!this.guard.accept(payload)) return;
          this.clearBanner();
          renderGroups(this.content, payload);
          break;
        }
        case "search": {
          this.clearBanner();
          clear(this.content);
          this.content.append(this.searchPanel.root);
          break;
        }
        case "detail":
          break;
      }
    } catch (err) {
      this.showError(err);
    }
  }

  async openDetail(proposalId: string, itemId: string | null): Promise<void> {
    try {
      const detail = await this.client.proposal(proposalId);
      if (!this.guard.accept(detail)) return;
      this.clearBanner();
      this.state.view = "detail";
      this.state.selectedProposal = proposalId;
      renderDetail(this.content, detail, itemId);
    } catch (err) {
      this.showError(err);
    }
  }
}

export function mount(root: HTMLElement): App {
  const app = new App(root);
  void app.show("heatmap");
  return app;
}

declare global {
  interface Window {
    laipApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("laip-root")) {
  window.laipApp = mount(document.getElementById("laip-root")!);
}
