import init, { beta, certify, table2 } from "./pkg/bnloci_web.js";

const $ = (id) => document.getElementById(id);
const int = (id) => Number.parseInt($(id).value, 10);

function triple(text, names) {
  const parts = text.split(",").map((p) => Number.parseInt(p.trim(), 10));
  if (parts.length !== 3 || parts.some(Number.isNaN)) {
    throw new Error(`expected ${names.join(",")}`);
  }
  return Object.fromEntries(names.map((n, i) => [n, parts[i]]));
}

function show(out, f) {
  try {
    out.textContent = f();
  } catch (e) {
    out.textContent = `error: ${e.message ?? e}`;
  }
}

await init();

$("b-go").onclick = () =>
  show($("b-out"), () => {
    const r = JSON.parse(beta(int("b-g"), int("b-n1"), int("b-d1"), int("b-n2"), int("b-d2"), int("b-k")));
    const lines = [`beta = ${r.beta}`, `chi(E1 ⊗ E2) = ${r.chi}`];
    if ("criterion_negative" in r) lines.push(`slope criterion: ${r.criterion_negative ? "negative" : "not negative"}`);
    return lines.join("\n");
  });

$("c-go").onclick = () =>
  show($("c-out"), () => {
    const query = {
      rule: "phi",
      locus1: triple($("c-locus").value, ["n", "d", "k"]),
      cs: triple($("c-cs").value, ["n", "d", "v"]),
    };
    return JSON.parse(certify($("c-curve").value.trim(), JSON.stringify(query))).text;
  });

$("t-go").onclick = () => {
  const table = $("t-out");
  try {
    const rows = JSON.parse(table2(int("t-max")));
    table.innerHTML = "<tr><th>n2</th><th>minimal g</th><th>printed</th></tr>";
    for (const r of rows) {
      const tr = table.insertRow();
      for (const v of [r.n2, r.g_min ?? "none", r.printed_g_min ?? ""]) tr.insertCell().textContent = v;
    }
  } catch (e) {
    table.textContent = `error: ${e.message ?? e}`;
  }
};
