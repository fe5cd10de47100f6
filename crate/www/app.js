// Demo page wiring: three wasm calls, SVG arc diagrams, no framework.

const LAYER_COLORS = ["#2563eb", "#d97706", "#0f766e", "#9333ea"];

let wasm = null;

async function boot() {
  try {
    const module = await import("./pkg/stackfold_wasm.js");
    await module.default();
    wasm = module;
  } catch (err) {
    document.getElementById("boot-error").style.display = "block";
    console.error("wasm module failed to load", err);
    return;
  }
  document.getElementById("fold-run").addEventListener("click", runFold);
  document.getElementById("planar-run").addEventListener("click", runPlanar);
  document.getElementById("encode-run").addEventListener("click", runEncode);
  runFold();
  runPlanar();
}

function el(tag, attrs = {}, text = null) {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== null) node.textContent = text;
  return node;
}

// SVG nodes need the SVG namespace; createElement would make inert ones.
function svgEl(tag, attrs = {}, text = null) {
  const node = document.createElementNS("http://www.w3.org/2000/svg", tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== null) node.textContent = text;
  return node;
}

function stat(label, value) {
  const box = el("div", { class: "stat" });
  box.append(el("b", {}, String(value)));
  box.append(document.createTextNode(label));
  return box;
}

function badge(ok, yes, no) {
  return el("span", { class: `badge ${ok ? "good" : "bad"}` }, ok ? yes : no);
}

function showError(target, err) {
  target.replaceChildren(el("div", { class: "error" }, String(err)));
}

// Arc diagram: bases on a horizontal spine, each pair a semicircle above
// (even layers) or below (odd layers).
function arcDiagram(title, n, pairs, layers, seq, dotbracket) {
  const box = el("div", { class: "arcbox" });
  box.append(el("h3", {}, title));

  const showLetters = n <= 120;
  const step = showLetters ? 14 : Math.max(1200 / n, 0.35);
  const margin = 18;
  const width = margin * 2 + step * (n - 1);
  let maxSpan = 1;
  for (const [i, j] of pairs) maxSpan = Math.max(maxSpan, j - i);
  const amp = Math.min(170, Math.max(30, (maxSpan * step) / 2.2));
  const mid = amp + 22;
  const height = mid * 2 + 4;

  const svg = svgEl("svg", {
    xmlns: "http://www.w3.org/2000/svg",
    width: Math.max(width, 280),
    height,
    viewBox: `0 0 ${Math.max(width, 280)} ${height}`,
  });
  const x = (pos) => margin + (pos - 1) * step;

  svg.append(
    svgEl("line", {
      x1: margin - 6, y1: mid, x2: x(n) + 6, y2: mid,
      stroke: "#9aa6b5", "stroke-width": 1.2,
    })
  );

  for (let idx = 0; idx < pairs.length; idx++) {
    const [i, j] = pairs[idx];
    const layer = layers[idx] ?? 0;
    const up = layer % 2 === 0;
    const r = ((j - i) * step) / 2;
    const ry = Math.min(r, amp - 4 + (layer > 1 ? 4 : 0));
    const sweep = up ? 1 : 0;
    const path = svgEl("path", {
      d: `M ${x(i)} ${mid} A ${r} ${ry} 0 0 ${sweep} ${x(j)} ${mid}`,
      fill: "none",
      stroke: LAYER_COLORS[layer % LAYER_COLORS.length],
      "stroke-width": n > 400 ? 0.7 : 1.4,
      opacity: 0.85,
    });
    svg.append(path);
  }

  if (showLetters) {
    for (let p = 1; p <= n; p++) {
      svg.append(
        svgEl("text", {
          x: x(p), y: mid + 4, "text-anchor": "middle",
          "font-size": 10, "font-family": "ui-monospace, monospace",
          fill: "#374151",
        }, seq ? seq[p - 1] : "·")
      );
    }
  }

  box.append(svg);
  if (dotbracket) box.append(el("pre", { class: "db" }, dotbracket));
  return box;
}

function runFold() {
  const out = document.getElementById("fold-out");
  try {
    const seq = document.getElementById("fold-seq").value;
    const width = parseInt(document.getElementById("fold-width").value, 10);
    const doc = JSON.parse(wasm.analyze_sequence(seq, width));

    const stats = el("div", { class: "stats" });
    if (doc.exact_count !== null) stats.append(stat("true optimum (exhaustive)", doc.exact_count));
    if (doc.dp) stats.append(stat("pseudoknot-free optimum (DP)", doc.dp.count));
    if (doc.dp_literal_count !== null && doc.dp && doc.dp_literal_count !== doc.dp.count) {
      stats.append(stat("DP without concatenation branch", doc.dp_literal_count));
    }
    stats.append(stat("greedy stacking pairs", doc.greedy.count));
    stats.append(stat("greedy runs selected", doc.greedy_runs.length));

    const parts = [stats];
    if (doc.dp_skipped_reason) parts.push(el("p", { class: "error" }, doc.dp_skipped_reason));
    if (doc.dp) {
      parts.push(
        arcDiagram(`exact pseudoknot-free fold — ${doc.dp.count} stacking pairs`,
          doc.n, doc.dp.pairs, doc.dp.layers, doc.sequence, doc.dp.dotbracket)
      );
    }
    const tag = doc.greedy.planar ? "planar" : "pseudoknotted, non-planar";
    parts.push(
      arcDiagram(`greedy fold (width ${width}) — ${doc.greedy.count} stacking pairs, ${tag}`,
        doc.n, doc.greedy.pairs, doc.greedy.layers, doc.sequence, doc.greedy.dotbracket)
    );
    out.replaceChildren(...parts);
  } catch (err) {
    showError(out, err);
  }
}

function runPlanar() {
  const out = document.getElementById("planar-out");
  try {
    const seq = document.getElementById("planar-seq").value;
    const pairs = document.getElementById("planar-pairs").value;
    const doc = JSON.parse(wasm.check_planarity(seq, pairs));

    const stats = el("div", { class: "stats" });
    stats.append(stat("stacking pairs", doc.structure.count));
    stats.append(stat("crossing-graph edges", doc.crossing_edges));
    const verdicts = el("div", { class: "stats" });
    verdicts.append(badge(doc.two_page, "two-page drawing exists", "no two-page drawing"));
    verdicts.append(
      badge(!doc.interleaving_block, "no interleaving block", "interleaving block found")
    );
    verdicts.append(badge(doc.structure.planar, "planar (stacking content)", "non-planar"));

    out.replaceChildren(
      stats,
      verdicts,
      arcDiagram("structure", doc.n, doc.structure.pairs, doc.structure.layers,
        doc.sequence, doc.structure.dotbracket)
    );
  } catch (err) {
    showError(out, err);
  }
}

function runEncode() {
  const out = document.getElementById("encode-out");
  try {
    const instance = document.getElementById("encode-inst").value;
    const matching = document.getElementById("encode-matching").value;
    const doc = JSON.parse(wasm.encode_matching(instance, matching));

    const stats = el("div", { class: "stats" });
    stats.append(stat("padding d", doc.d));
    stats.append(stat("per-region σ", doc.sigma));
    stats.append(stat("target h", doc.h));
    stats.append(stat("sequence length", doc.sequence_length));
    const verdicts = el("div", { class: "stats" });
    verdicts.append(
      badge(doc.census_consistent, "census matches the analytic table", "census mismatch")
    );

    const parts = [stats, verdicts];
    if (doc.witness) {
      verdicts.append(
        badge(doc.witness.matches_target,
          `witness hits h exactly (${doc.witness.count})`,
          `witness off target (${doc.witness.count} vs ${doc.h})`)
      );
      verdicts.append(badge(doc.witness.structure.planar, "witness planar (two-page)", "witness non-planar"));
      parts.push(
        arcDiagram(
          `witness structure — ${doc.witness.count} stacking pairs over ${doc.sequence_length} bases`,
          doc.sequence_length, doc.witness.structure.pairs, doc.witness.structure.layers,
          doc.sequence, null)
      );
    }
    out.replaceChildren(...parts);
  } catch (err) {
    showError(out, err);
  }
}

boot();
