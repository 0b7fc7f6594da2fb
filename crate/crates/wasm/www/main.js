import init, { lpoly, points, jacobi } from "./pkg/kummer_wasm.js";

const $ = (id) => document.getElementById(id);
const out = $("out");

function inputs() {
  return {
    ell: Number.parseInt($("ell").value, 10),
    q: $("q").value,
    a: $("a").value,
    b: $("b").value,
    modulus: $("modulus").value,
    base: $("base").value,
    tmax: Number.parseInt($("tmax").value, 10),
  };
}

function el(tag, text, cls) {
  const e = document.createElement(tag);
  if (text !== undefined) e.textContent = text;
  if (cls) e.className = cls;
  return e;
}

function show(title, body) {
  out.replaceChildren(el("h2", title), ...body);
}

function guard(title, f) {
  try {
    f();
  } catch (e) {
    show(title, [el("pre", String(e.message ?? e), "bad")]);
  }
}

function showLpoly() {
  const v = inputs();
  guard("L-polynomial", () => {
    const r = JSON.parse(lpoly(v.ell, v.q, v.modulus, v.a, v.b, v.base));
    const facts = [`genus ${r.genus}`];
    if (r.m !== null) facts.push(`m = ${r.m}`, `n = ${r.n}`, r.kappa_square ? "a²−4b square" : "a²−4b non-square");
    const body = [el("p", facts.join(", ")), el("pre", `L(u) = ${r.lpoly}`), el("p", `class number h = ${r.class_number}`)];
    if (r.jacobi) body.push(el("pre", `J = ${r.jacobi}`));
    show("L-polynomial", body);
  });
}

function showPoints() {
  const v = inputs();
  guard("Point counts", () => {
    const r = JSON.parse(points(v.ell, v.q, v.modulus, v.a, v.b, v.base, v.tmax));
    const table = el("table");
    const head = el("tr");
    for (const h of ["t", "a(q^t)", "N_t", "enumerated"]) head.append(el("th", h));
    table.append(head);
    for (const row of r.rows) {
      const tr = el("tr");
      tr.append(el("td", row.t), el("td", row.trace), el("td", row.count));
      const check = row.oracle === null ? "—" : row.agrees ? `${row.oracle} ✓` : `${row.oracle} ✗`;
      tr.append(el("td", check, row.agrees === false ? "bad" : undefined));
      table.append(tr);
    }
    show("Point counts", [table, el("p", "Enumeration runs only while q^t ≤ 262144.")]);
  });
}

function showJacobi() {
  const v = inputs();
  guard("Jacobi sum", () => {
    const r = JSON.parse(jacobi(v.ell, v.q, v.modulus, v.base));
    if (r.jacobi === null) {
      show("Jacobi sum", [el("p", r.note)]);
      return;
    }
    const list = el("ul");
    for (const c of r.checks) list.append(el("li", `${c.name}: ${c.status} (${c.detail})`, c.status === "fail" ? "bad" : undefined));
    show("Jacobi sum", [el("p", `over F_${r.field_order} (m = ${r.m})`), el("pre", `J = ${r.jacobi}`), list]);
  });
}

await init();
$("run-lpoly").addEventListener("click", showLpoly);
$("run-points").addEventListener("click", showPoints);
$("run-jacobi").addEventListener("click", showJacobi);
showLpoly();
