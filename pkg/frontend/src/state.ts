/** View state and the snapshot-consistency guard.
 *
 * Every API response carries the snapshot id it was derived from. Responses
 * are applied only while they match the id this session first observed; a
 * mismatch means the service restarted over different inputs, so the user
 * gets a reload prompt instead of a silently inconsistent mix of views.
 */

export type ViewName = "heatmap" | "rankings" | "groups" | "search" | "detail";

export interface ViewState {
  view: ViewName;
  granularity: "topic" | "keyword";
  query: string;
  searchMode: "keyword" | "paragraph";
  selectedProposal: string | null;
  selectedTopic: string | null;
  snapshotId: string | null;
}

export function initialState(): ViewState {
  return {
    view: "heatmap",
    granularity: "topic",
    query: "",
    searchMode: "keyword",
    selectedProposal: null,
    selectedTopic: null,
    snapshotId: null,
  };
}

export class SnapshotGuard {
  private onMismatch: (seen: string, got: string) => void;

  constructor(private state: ViewState, onMismatch: (seen: string, got: string) => void) {
    this.onMismatch = onMismatch;
  }

  /** Returns true when the payload may be applied to the current state. */
  accept(payload: { snapshot_id: string }): boolean {
    if (this.state.snapshotId === null) {
      this.state.snapshotId = payload.snapshot_id;
      return true;
    }
    if (this.state.snapshotId !== payload.snapshot_id) {
      this.onMismatch(this.state.snapshotId, payload.snapshot_id);
      return false;
    }
    return true;
  }
}
