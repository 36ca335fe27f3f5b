/* DOM wiring for the elicitation task: construct palette, SVG canvas with
 * draggable cards, arrow drawing, strength assignment, other-card removal
 * and canonical-file export.  No backend; export is a local download.
 */

import { Arrow, OTHER_PREFIX, Session, SessionNode } from "./model.js";
import { CONSTRUCTS } from "./vocabulary.js";

const svgNS = "http://www.w3.org/2000/svg";

type Mode = { kind: "idle" } | { kind: "arrow-from"; source: string };

class App {
  session = new Session(`r${Date.now().toString(36)}`);
  mode: Mode = { kind: "idle" };
  selectedArrow: Arrow | null = null;

  readonly canvas = document.getElementById("canvas") as unknown as SVGSVGElement;
  readonly palette = document.getElementById("palette")!;
  readonly status = document.getElementById("status")!;
  readonly blockers = document.getElementById("blockers")!;
  readonly strengthBar = document.getElementById("strength-bar")!;

  constructor() {
    this.buildPalette();
    this.bindControls();
    this.render();
  }

  buildPalette(): void {
    for (const construct of CONSTRUCTS) {
      const button = document.createElement("button");
      button.className = "palette-card";
      button.textContent = construct.label;
      button.dataset.id = construct.id;
      button.addEventListener("click", () => this.togglePick(construct.id, button));
      this.palette.appendChild(button);
    }
  }

  bindControls(): void {
    const respondent = document.getElementById("respondent") as HTMLInputElement;
    respondent.value = this.session.respondentId;
    respondent.addEventListener("input", () => {
      this.session.respondentId = respondent.value;
    });
    document.getElementById("add-custom")!.addEventListener("click", () => {
      const input = document.getElementById("custom-label") as HTMLInputElement;
      try {
        this.session.addCustomConstruct(input.value);
        input.value = "";
        this.render();
      } catch (err) {
        this.say(String(err));
      }
    });
    document.getElementById("export")!.addEventListener("click", () => this.export());
    for (const value of [-3, -2, -1, 1, 2, 3]) {
      const button = document.createElement("button");
      button.textContent = value > 0 ? `+${value}` : `${value}`;
      button.addEventListener("click", () => this.assign(value));
      this.strengthBar.appendChild(button);
    }
  }

  togglePick(id: string, button: HTMLButtonElement): void {
    try {
      if (this.session.nodes.has(id)) {
        this.session.removeConstruct(id);
        button.classList.remove("picked");
      } else {
        this.session.pickConstruct(id);
        button.classList.add("picked");
      }
      this.render();
    } catch (err) {
      this.say(String(err));
    }
  }

  nodeClicked(node: SessionNode): void {
    if (this.mode.kind === "idle") {
      this.mode = { kind: "arrow-from", source: node.id };
      this.say(`drawing arrow from "${node.label}" — click the effect card`);
    } else {
      const source = this.mode.source;
      this.mode = { kind: "idle" };
      try {
        this.selectedArrow = this.session.drawArrow(source, node.id);
        this.say("arrow drawn — pick its strength below");
      } catch (err) {
        this.say(String(err));
      }
    }
    this.render();
  }

  assign(value: number): void {
    if (!this.selectedArrow) {
      this.say("select an arrow first");
      return;
    }
    try {
      this.session.assignStrength(this.selectedArrow.from, this.selectedArrow.to, value);
      this.say("strength stored");
      this.render();
    } catch (err) {
      this.say(String(err));
    }
  }

  export(): void {
    const blockers = this.session.exportBlockers();
    if (blockers.length > 0) {
      this.renderBlockers(blockers);
      this.say("export blocked — resolve the listed problems");
      return;
    }
    const blob = new Blob([this.session.exportJson()], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `${this.session.respondentId || "map"}.json`;
    link.click();
    URL.revokeObjectURL(link.href);
    this.say("map exported");
  }

  say(text: string): void {
    this.status.textContent = text;
  }

  renderBlockers(blockers: string[]): void {
    this.blockers.replaceChildren();
    const unreachable = new Set(this.session.unreachableNodes());
    for (const text of blockers) {
      const item = document.createElement("li");
      item.textContent = text;
      this.blockers.appendChild(item);
    }
    for (const element of this.canvas.querySelectorAll<SVGGElement>("g.node")) {
      element.classList.toggle("unreachable", unreachable.has(element.dataset.id ?? ""));
    }
  }

  render(): void {
    this.canvas.replaceChildren();
    const width = this.canvas.clientWidth || 900;
    const height = this.canvas.clientHeight || 600;
    const position = (node: SessionNode) => ({ x: node.x * width, y: node.y * height });

    for (const arrow of this.session.allArrows()) {
      const from = this.session.nodes.get(arrow.from)!;
      const to = this.session.nodes.get(arrow.to)!;
      const a = position(from);
      const b = position(to);
      const line = document.createElementNS(svgNS, "line");
      line.setAttribute("x1", `${a.x}`);
      line.setAttribute("y1", `${a.y}`);
      line.setAttribute("x2", `${b.x}`);
      line.setAttribute("y2", `${b.y}`);
      line.setAttribute("marker-end", "url(#arrowhead)");
      line.classList.add("arrow");
      if (arrow === this.selectedArrow) line.classList.add("selected");
      if (arrow.strength === null) line.classList.add("unweighted");
      line.addEventListener("click", (event) => {
        event.stopPropagation();
        this.selectedArrow = arrow;
        this.say(`arrow ${from.label} -> ${to.label} selected`);
        this.render();
      });
      this.canvas.appendChild(line);

      const label = document.createElementNS(svgNS, "text");
      label.setAttribute("x", `${(a.x + b.x) / 2}`);
      label.setAttribute("y", `${(a.y + b.y) / 2 - 4}`);
      label.classList.add("arrow-label");
      if (arrow.strength === null) {
        label.textContent = "?";
      } else if (arrow.from.startsWith(OTHER_PREFIX)) {
        label.textContent = `${arrow.strength}`;  // magnitude only, no sign
      } else {
        label.textContent = arrow.strength > 0 ? `+${arrow.strength}` : `${arrow.strength}`;
      }
      this.canvas.appendChild(label);
    }

    for (const node of this.session.nodes.values()) {
      const { x, y } = position(node);
      const group = document.createElementNS(svgNS, "g");
      group.classList.add("node", node.kind);
      group.dataset.id = node.id;
      group.setAttribute("transform", `translate(${x},${y})`);

      const rect = document.createElementNS(svgNS, "rect");
      const cardWidth = Math.max(70, node.label.length * 6.5 + 16);
      rect.setAttribute("x", `${-cardWidth / 2}`);
      rect.setAttribute("y", "-16");
      rect.setAttribute("width", `${cardWidth}`);
      rect.setAttribute("height", "32");
      rect.setAttribute("rx", "6");
      group.appendChild(rect);

      const text = document.createElementNS(svgNS, "text");
      text.setAttribute("text-anchor", "middle");
      text.setAttribute("dy", "4");
      text.textContent = node.label;
      group.appendChild(text);

      if (node.kind === "other") {
        const remove = document.createElementNS(svgNS, "text");
        remove.setAttribute("x", `${cardWidth / 2 - 8}`);
        remove.setAttribute("y", "-18");
        remove.classList.add("remove-other");
        remove.textContent = "×";
        remove.addEventListener("click", (event) => {
          event.stopPropagation();
          this.session.removeOtherCard(node.attachedTo!);
          this.say("other card removed — no other significant antecedents");
          this.render();
        });
        group.appendChild(remove);
      }

      group.addEventListener("click", () => this.nodeClicked(node));
      this.enableDrag(group, node, width, height);
      this.canvas.appendChild(group);
    }

    this.appendArrowheadDef();
    const warning = this.session.cardCountWarning();
    document.getElementById("card-warning")!.textContent = warning ?? "";
    this.renderBlockers(this.session.constructCount() ? this.session.exportBlockers() : []);
  }

  enableDrag(group: SVGGElement, node: SessionNode, width: number, height: number): void {
    let dragging = false;
    group.addEventListener("mousedown", () => { dragging = true; });
    this.canvas.addEventListener("mousemove", (event) => {
      if (!dragging) return;
      const bounds = this.canvas.getBoundingClientRect();
      node.x = Math.min(Math.max((event.clientX - bounds.left) / width, 0.02), 0.98);
      node.y = Math.min(Math.max((event.clientY - bounds.top) / height, 0.02), 0.98);
      group.setAttribute("transform", `translate(${node.x * width},${node.y * height})`);
    });
    window.addEventListener("mouseup", () => {
      if (dragging) {
        dragging = false;
        this.render();
      }
    });
  }

  appendArrowheadDef(): void {
    const defs = document.createElementNS(svgNS, "defs");
    const marker = document.createElementNS(svgNS, "marker");
    marker.setAttribute("id", "arrowhead");
    marker.setAttribute("markerWidth", "10");
    marker.setAttribute("markerHeight", "8");
    marker.setAttribute("refX", "9");
    marker.setAttribute("refY", "4");
    marker.setAttribute("orient", "auto");
    const tip = document.createElementNS(svgNS, "path");
    tip.setAttribute("d", "M0,0 L10,4 L0,8 z");
    marker.appendChild(tip);
    defs.appendChild(marker);
    this.canvas.appendChild(defs);
  }
}

window.addEventListener("DOMContentLoaded", () => {
  new App();
});
