import init, { groups, group_info, gamma, carrier, sign_table } from "./pkg/torsorlab_wasm_demo.js";

const $ = (id) => document.getElementById(id);

// run an export and show its error message in place of a result
function attempt(out, f) {
  try {
    out.classList.remove("error");
    return JSON.parse(f());
  } catch (e) {
    out.classList.add("error");
    out.textContent = e.message ?? String(e);
    return null;
  }
}

function showInfo() {
  const g = attempt($("info"), () => group_info($("group").value));
  if (g) {
    const kind = g.abelian ? "abelian" : "non-abelian";
    $("info").textContent = `order ${g.order}, ${kind}, subgroups: ${g.subgroups.join("  ")}`;
  }
}

function runGamma() {
  const v = ["gx", "ga", "gy", "gb", "gz"].map((id) => $(id).value);
  const r = attempt($("gout"), () => gamma($("group").value, ...v, $("gopp").checked));
  if (r) $("gout").textContent = `${r.result}    (${r.size} elements)`;
}

function runCarrier() {
  const r = attempt($("cout"), () => carrier($("group").value, $("ca").value, $("cb").value));
  if (!r) return;
  const lines = [...r.elements, `${r.size} common sections`];
  if (r.size > 0) {
    const kind = r.based_abelian ? "abelian" : "non-abelian";
    const sym = r.symmetric ? ", isomorphic to the symmetric group on a" : "";
    lines.push(`group at ${r.basepoint}: order ${r.based_order}, ${kind}${sym}`);
  }
  $("cout").textContent = lines.join("\n");
}

function runSigns() {
  const out = $("sout");
  const t = attempt(out, () => sign_table($("group").value));
  if (!t) return;
  const head = "<tr><th>σ</th><th>letters</th><th>printed</th><th>checked</th><th></th><th>derived</th></tr>";
  const rows = t.rows.map((r) => {
    const cls = r.printed_holds ? "" : ' class="fixed"';
    const checked = r.printed_holds ? "" : r.checked;
    return `<tr${cls}><td>${r.permutation}</td><td>${r.letters}</td><td>${r.printed}</td>` +
      `<td>${checked}</td><td>${r.pass ? "pass" : "FAIL"}</td><td>${r.derived.join(" ")}</td></tr>`;
  });
  out.innerHTML = `<table>${head}${rows.join("")}</table>`;
}

await init();
for (const name of JSON.parse(groups())) {
  $("group").add(new Option(name, name, name === "z6", name === "z6"));
}
$("group").addEventListener("change", () => { showInfo(); runGamma(); });
for (const id of ["gx", "ga", "gy", "gb", "gz", "gopp"]) $(id).addEventListener("input", runGamma);
$("crun").addEventListener("click", runCarrier);
$("srun").addEventListener("click", runSigns);
showInfo();
runGamma();
