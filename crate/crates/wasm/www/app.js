// Built with: wasm-bindgen --target web --out-dir www/pkg <qgidem_wasm.wasm>
import init, { builtins, analyze, walk, quotient } from "./pkg/qgidem_wasm.js";

const $ = (id) => document.getElementById(id);

function fail(el, e) {
  el.innerHTML = `<p class="err">${String(e.message ?? e)}</p>`;
}

function fmt(x) {
  return Math.abs(x) < 5e-13 ? "0" : x.toFixed(4);
}

function table(head, rows) {
  const th = head.map((h) => `<th>${h}</th>`).join("");
  const tr = rows.map((r) => `<tr>${r.map((c) => `<td>${c}</td>`).join("")}</tr>`).join("");
  return `<table><tr>${th}</tr>${tr}</table>`;
}

// Levels from the bottom by longest chain of covers.
function hasse(svg, n, covers, labels) {
  const level = new Array(n).fill(0);
  for (let pass = 0; pass < n; pass++) {
    for (const [a, b] of covers) level[b] = Math.max(level[b], level[a] + 1);
  }
  const top = Math.max(0, ...level);
  const rows = [];
  level.forEach((l, i) => (rows[l] ??= []).push(i));
  const w = +svg.getAttribute("width");
  const h = 70 * (top + 1);
  svg.setAttribute("height", h);
  const pos = [];
  rows.forEach((row, l) =>
    row.forEach((i, k) => {
      pos[i] = [((k + 1) * w) / (row.length + 1), h - 35 - 70 * l];
    }),
  );
  let s = "";
  for (const [a, b] of covers) {
    s += `<line x1="${pos[a][0]}" y1="${pos[a][1]}" x2="${pos[b][0]}" y2="${pos[b][1]}" stroke="#888"/>`;
  }
  for (let i = 0; i < n; i++) {
    const [x, y] = pos[i];
    s += `<circle cx="${x}" cy="${y}" r="14" fill="${labels[i].haar ? "#cde" : "#fdc"}" stroke="#333"/>`;
    s += `<text x="${x}" y="${y + 4}" text-anchor="middle">${i}</text>`;
  }
  svg.innerHTML = s;
}

function runAnalyze() {
  const out = $("a-out");
  const spec = `${$("a-kind").value}:${$("a-group").value}`;
  try {
    const r = JSON.parse(analyze(spec, +$("a-starts").value, 0));
    const rows = r.states.map((s, i) => [
      i,
      s.subgroup ? `{${s.subgroup.join(",")}}` : "?",
      s.haar === null ? "disagree" : s.haar ? "Haar" : "non-Haar",
      s.null_space_dim,
      s.subalgebra_dim,
      `[${s.coeffs.map(fmt).join(", ")}]`,
    ]);
    out.innerHTML =
      `<p>${spec}: dim ${r.dim}, ${r.states.length} idempotents found` +
      `${r.commutative ? ", commutative" : ""}${r.cocommutative ? ", cocommutative" : ""}</p>` +
      table(["#", "subgroup", "type", "dim N", "dim C", "coefficients"], rows);
    hasse($("a-hasse"), r.states.length, r.covers, r.states);
  } catch (e) {
    fail(out, e);
  }
}

function plot(canvas, d) {
  const g = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = 40;
  g.clearRect(0, 0, W, H);
  const pts = d.map((y, i) => [i + 1, y]).filter(([, y]) => y > 0);
  if (!pts.length) return;
  const lx = (k) => Math.log10(k), ly = (y) => Math.log10(y);
  const x1 = lx(d.length) || 1;
  const ys = pts.map(([, y]) => ly(y)).concat([ly(10), ly(10 / d.length)]);
  const y0 = Math.min(...ys), y1 = Math.max(...ys);
  const X = (k) => pad + ((W - 2 * pad) * lx(k)) / x1;
  const Y = (v) => H - pad - ((H - 2 * pad) * (v - y0)) / (y1 - y0 || 1);
  g.strokeStyle = "#aaa";
  g.strokeRect(pad, pad, W - 2 * pad, H - 2 * pad);
  g.setLineDash([4, 4]);
  g.beginPath();
  g.moveTo(X(1), Y(ly(10)));
  g.lineTo(X(d.length), Y(ly(10 / d.length)));
  g.stroke();
  g.setLineDash([]);
  g.strokeStyle = "#06c";
  g.beginPath();
  pts.forEach(([k, y], i) => (i ? g.lineTo(X(k), Y(ly(y))) : g.moveTo(X(k), Y(ly(y)))));
  g.stroke();
  g.fillStyle = "#333";
  g.fillText("log k", W / 2, H - 10);
  g.fillText("log ‖ν_k − ν_∞‖   (dashed: 10/k)", pad, pad - 10);
}

function runWalk() {
  const out = $("w-out");
  try {
    const r = JSON.parse(walk($("w-spec").value, $("w-coeffs").value, +$("w-steps").value));
    const last = r.distances[r.distances.length - 1];
    out.innerHTML =
      `<p>limit [${r.limit.map(fmt).join(", ")}]${r.limit_is_haar ? " (Haar state)" : ""}, ` +
      `idempotency residual ${r.limit_idempotency.toExponential(2)}, final distance ${last.toExponential(3)}</p>`;
    plot($("w-plot"), r.distances);
  } catch (e) {
    fail(out, e);
  }
}

function runQuotient() {
  const out = $("q-out");
  try {
    const r = JSON.parse(quotient($("q-spec").value, $("q-sub").value));
    out.innerHTML = table(
      ["quotient dim", "Haar state", "max residual", "fixed points", "L_ω(A)", "coaction rank", "checks"],
      [[
        r.dim,
        `[${r.haar_mu.map(fmt).join(", ")}]`,
        r.max_residual.toExponential(2),
        r.fixed_dim,
        r.invariant_dim,
        `${r.coaction_rank} / ${r.coaction_expected}`,
        r.passed ? "pass" : "FAIL",
      ]],
    );
  } catch (e) {
    fail(out, e);
  }
}

await init();
for (const name of JSON.parse(builtins())) {
  const o = document.createElement("option");
  o.textContent = name;
  if (name === "S3") o.selected = true;
  $("a-group").append(o);
}
$("a-run").onclick = runAnalyze;
$("w-run").onclick = runWalk;
$("q-run").onclick = runQuotient;
