import { ApiClient } from "./api";
import { CuratorController, Region } from "./app";

/** Browser bootstrap: bind the controller to the five page regions. */

const REGION_IDS: Record<Region, string> = {
  suggestions: "region-suggestions",
  relations: "region-relations",
  objects: "region-objects",
  candidates: "region-candidates",
  provenance: "region-provenance",
};

function start(): void {
  const baseUrl =
    document.body.dataset.apiBase ?? `${window.location.protocol}//${window.location.host}`;
  const api = new ApiClient(baseUrl);
  const controller = new CuratorController(api, (region, html) => {
    const el = document.getElementById(REGION_IDS[region]);
    if (el) {
      el.innerHTML = html;
    }
  });

  const search = document.getElementById("entity-search") as HTMLInputElement | null;
  search?.addEventListener("input", () => controller.searchInput(search.value));

  document.addEventListener("click", (event) => {
    const el = event.target as HTMLElement;
    if (el.matches(".suggestion")) {
      void controller.selectEntity(el.dataset.entityId ?? "");
    } else if (el.matches(".object")) {
      void controller.openEvent(el.dataset.eventKey ?? "");
    } else if (el.matches("button.accept")) {
      void controller.decide(el.dataset.recordId ?? "", "accept");
    } else if (el.matches("button.reject")) {
      void controller.decide(el.dataset.recordId ?? "", "reject");
    } else if (el.matches("button.provenance")) {
      void controller.showProvenance(el.dataset.recordId ?? "");
    }
  });

  document.addEventListener("change", (event) => {
    const el = event.target as HTMLSelectElement;
    if (el.id === "relation-picker") {
      void controller.selectRelation(el.value);
    }
  });
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", start);
}
