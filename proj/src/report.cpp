#include "hopfad/report.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

#include "hopfad/errors.hpp"

namespace hopfad {

namespace {

// Registry of emitted check ids: longest matching prefix decides the
// property tag, so per-element ids ("fc.element.<name>") share one tag
// while sibling checks keep their own.
constexpr std::array<std::pair<const char*, const char*>, 20> kPropertyRegistry{{
    {"axioms.", "hopf-algebra-axioms"},
    {"adjoint.comultiplication-identity", "adjoint-comultiplication-compatibility"},
    {"adjoint.module-algebra", "adjoint-module-algebra-property"},
    {"adjoint.multiplication-recovery", "adjoint-multiplication-recovery"},
    {"adfin.k-probe", "coefficient-orbit-finiteness"},
    {"adfin.window-left-coideal", "locally-finite-left-coideal"},
    {"adfin.antipode-stability", "locally-finite-antipode-stability"},
    {"adfin.whole-algebra", "finite-dimensional-locally-finite"},
    {"adfin.orbit-growth", "adjoint-orbit-growth"},
    {"fc.element.", "fc-center-membership"},
    {"fc.window-members", "fc-center-window"},
    {"fc.correspondence", "fc-center-correspondence"},
    {"dietzmann.family", "coideal-family-hypotheses"},
    {"dietzmann.component.", "left-coideal-subalgebra"},
    {"dietzmann.ad-stability", "family-adjoint-stability"},
    {"dietzmann.filtration", "product-filtration-stabilization"},
    {"dietzmann.straighten", "straightening-certification"},
    {"tensorfin.window", "tensor-locally-finite-membership"},
    {"tensorfin.random-combinations", "tensor-locally-finite-membership"},
    {"tensorfin.product-rule", "locally-finite-tensor-product-rule"},
}};

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::evidence: return "evidence";
    case CheckStatus::budget_exceeded: return "budget-exceeded";
  }
  throw Error("unknown check status");
}

CheckStatus check_status_from_string(const std::string& text) {
  if (text == "pass") return CheckStatus::pass;
  if (text == "fail") return CheckStatus::fail;
  if (text == "evidence") return CheckStatus::evidence;
  if (text == "budget-exceeded") return CheckStatus::budget_exceeded;
  throw ParseError("unknown check status '" + text + "'");
}

std::string property_tag(const std::string& check_id) {
  const char* best = nullptr;
  size_t best_len = 0;
  for (const auto& [prefix, tag] : kPropertyRegistry) {
    const size_t len = std::string_view(prefix).size();
    if (len >= best_len && check_id.compare(0, len, prefix) == 0) {
      best = tag;
      best_len = len;
    }
  }
  if (!best) throw Error("check id '" + check_id + "' has no registered property");
  return best;
}

CheckResult& Report::add(const std::string& id, CheckStatus status,
                         nlohmann::ordered_json data) {
  CheckResult result{id, property_tag(id), status, std::move(data)};
  auto pos = std::lower_bound(
      checks.begin(), checks.end(), result,
      [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  if (pos != checks.end() && pos->id == id)
    throw Error("duplicate check id '" + id + "'");
  return *checks.insert(pos, std::move(result));
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckStatus::pass;
  });
}

int Report::exit_code() const {
  bool undecided = false;
  for (const CheckResult& c : checks) {
    if (c.status == CheckStatus::fail) return 1;
    if (c.status != CheckStatus::pass) undecided = true;
  }
  return undecided ? 2 : 0;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  j["version"] = version;
  j["command"] = command;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckResult& c : checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["property"] = c.property;
    e["status"] = to_string(c.status);
    e["data"] = c.data;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j;
}

Report Report::from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ParseError("report must be a JSON object");
  Report r;
  try {
    r.schema = j.at("schema").get<int>();
    if (r.schema != 1)
      throw ParseError("unsupported report schema " + std::to_string(r.schema));
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    for (const auto& e : j.at("checks")) {
      CheckResult c;
      c.id = e.at("id").get<std::string>();
      c.property = e.at("property").get<std::string>();
      c.status = check_status_from_string(e.at("status").get<std::string>());
      c.data = e.at("data");
      r.checks.push_back(std::move(c));
    }
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string Report::render_json() const { return to_json().dump(2) + "\n"; }

std::string Report::render_text() const {
  std::ostringstream out;
  out << "hopfad " << version << "\n";
  out << "command: " << command << "\n";
  size_t width = 0;
  for (const CheckResult& c : checks) width = std::max(width, c.id.size());
  int npass = 0, nfail = 0, nevid = 0, nbudget = 0;
  for (const CheckResult& c : checks) {
    switch (c.status) {
      case CheckStatus::pass: ++npass; break;
      case CheckStatus::fail: ++nfail; break;
      case CheckStatus::evidence: ++nevid; break;
      case CheckStatus::budget_exceeded: ++nbudget; break;
    }
    out << "  " << c.id << std::string(width - c.id.size() + 2, ' ')
        << to_string(c.status);
    if (!c.data.empty()) out << "  " << c.data.dump();
    out << "\n";
  }
  out << checks.size() << " checks: " << npass << " pass, " << nfail
      << " fail, " << nevid << " evidence, " << nbudget << " budget-exceeded\n";
  return out.str();
}

}  // namespace hopfad
