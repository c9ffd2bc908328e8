import init, { radial, analyseShape, checkBound } from "./pkg/robin_bounds_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);
const fmt = (x) => (x === null || x === undefined ? "-" : Math.abs(x) < 1e-3 && x !== 0 ? x.toExponential(4) : x.toFixed(6));

function table(el, rows) {
  el.innerHTML = rows.map(([k, v, cls]) => `<tr><td>${k}</td><td class="${cls || ""}">${v}</td></tr>`).join("");
}

function fail(el, e) {
  el.innerHTML = `<tr><td class="err">${e}</td></tr>`;
}

function plotProfile(canvas, r, v) {
  const g = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 30;
  g.clearRect(0, 0, w, h);
  const lo = Math.min(0, ...v), hi = Math.max(...v);
  const x = (t) => pad + (t / r[r.length - 1]) * (w - 2 * pad);
  const y = (s) => h - pad - ((s - lo) / (hi - lo || 1)) * (h - 2 * pad);
  g.strokeStyle = "#999";
  g.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  g.fillStyle = "#555";
  g.fillText("0", pad - 4, h - pad + 14);
  g.fillText(`R = ${r[r.length - 1]}`, w - pad - 40, h - pad + 14);
  g.fillText(hi.toFixed(3), 2, y(hi) + 4);
  g.strokeStyle = "#1f5fbf";
  g.lineWidth = 2;
  g.beginPath();
  r.forEach((t, i) => (i ? g.lineTo(x(t), y(v[i])) : g.moveTo(x(t), y(v[i]))));
  g.stroke();
}

function drawShape(canvas, s) {
  const g = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  g.clearRect(0, 0, w, h);
  const pts = s.vertices.concat([[s.center_star[0] + s.radius_star, s.center_star[1]], [s.center_star[0] - s.radius_star, s.center_star[1]]]);
  const ext = Math.max(...pts.map(([a, b]) => Math.max(Math.abs(a), Math.abs(b)))) * 1.1 + s.radius_star * 0.2;
  const k = (w / 2) / ext;
  const X = (a) => w / 2 + a * k, Y = (b) => h / 2 - b * k;
  const poly = (vs, stroke, fill) => {
    g.beginPath();
    vs.forEach(([a, b], i) => (i ? g.lineTo(X(a), Y(b)) : g.moveTo(X(a), Y(b))));
    g.closePath();
    if (fill) { g.fillStyle = fill; g.fill(); }
    g.strokeStyle = stroke;
    g.stroke();
  };
  poly(s.vertices, "#222", "#eef3fb");
  s.layers.forEach((l) => poly(l, "#7a9cd6"));
  g.strokeStyle = "#c55";
  g.setLineDash([4, 3]);
  g.beginPath();
  g.arc(X(s.center_star[0]), Y(s.center_star[1]), s.radius_star * k, 0, 2 * Math.PI);
  g.stroke();
  g.setLineDash([]);
}

function solveRadial() {
  try {
    const v = radial(num("rp"), num("rb"), num("rr"));
    plotProfile($("rc"), v.r, v.v);
    table($("rt"), [
      ["λ", fmt(v.lambda)],
      ["C = v*^p |B| / ‖v‖ₚᵖ", fmt(v.constant_c)],
      ["min v", fmt(v.v_min)],
      ["max v", fmt(v.v_max)],
    ]);
  } catch (e) {
    fail($("rt"), e);
  }
}

function drawCurrent() {
  try {
    const s = analyseShape($("ss").value, num("sd") | 0);
    drawShape($("sc"), s);
    table($("st"), [
      ["vertices", s.vertices.length],
      ["area", fmt(s.area)],
      ["perimeter", fmt(s.perimeter)],
      ["inradius", fmt(s.inradius)],
      ["|Ω*| − |Ω|", fmt(s.deficit_m)],
      ["Hausdorff A_H*", fmt(s.hausdorff_star)],
      ["Fraenkel α", fmt(s.fraenkel)],
      ["min −dP/dt (≥ 2π)", fmt(s.min_perimeter_rate)],
    ]);
  } catch (e) {
    fail($("st"), e);
  }
}

function check() {
  $("ct").innerHTML = "<tr><td>solving…</td></tr>";
  // let the message paint before the blocking solve
  setTimeout(() => {
    try {
      const c = checkBound($("ss").value, num("sd") | 0, num("cp"), num("cb"));
      table($("ct"), [
        ["theorem", c.theorem],
        ["λ(Ω*) ball", fmt(c.lambda_ball)],
        ["λ mesh (upper)", fmt(c.lambda_mesh)],
        ["transplant quotient", fmt(c.transplant_quotient)],
        ["deficit 1 − |Ω|/|Ω*|", fmt(c.deficit)],
        ["C", fmt(c.constant)],
        ["lhs", fmt(c.lhs)],
        ["rhs", fmt(c.rhs)],
        ["slack", fmt(c.slack)],
        ["status", c.status, c.status],
      ]);
    } catch (e) {
      fail($("ct"), e);
    }
  }, 10);
}

await init();
$("status").textContent = "ready";
$("rgo").onclick = solveRadial;
$("sgo").onclick = drawCurrent;
$("cgo").onclick = check;
solveRadial();
drawCurrent();
