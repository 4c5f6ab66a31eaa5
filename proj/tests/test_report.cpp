#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hopfad/cli.hpp"
#include "hopfad/errors.hpp"
#include "hopfad/hopf.hpp"
#include "hopfad/report.hpp"

using namespace hopfad;
using nlohmann::ordered_json;

namespace {

// Temporary file that cleans up after itself.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& content) {
    path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

ordered_json parse_out(const CliResult& r) { return ordered_json::parse(r.out); }

const ordered_json& find_check(const ordered_json& doc, const std::string& id) {
  for (const ordered_json& c : doc.at("checks"))
    if (c.at("id") == id) return c;
  throw std::runtime_error("no check with id " + id);
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("checks stay sorted by id regardless of insertion order") {
  Report rep;
  rep.add("fc.window-members", CheckStatus::pass);
  rep.add("adfin.k-probe", CheckStatus::pass);
  rep.add("fc.element.e", CheckStatus::pass);
  rep.add("axioms.unit", CheckStatus::fail);
  std::vector<std::string> ids;
  for (const CheckResult& c : rep.checks) ids.push_back(c.id);
  CHECK(ids == std::vector<std::string>{"adfin.k-probe", "axioms.unit",
                                        "fc.element.e", "fc.window-members"});
  CHECK_THROWS_AS(rep.add("axioms.unit", CheckStatus::pass), Error);
}

TEST_CASE("every check id carries exactly one property tag") {
  CHECK(property_tag("axioms.associativity") == "hopf-algebra-axioms");
  CHECK(property_tag("axioms.antipode-law") == "hopf-algebra-axioms");
  CHECK(property_tag("fc.element.r^2") == "fc-center-membership");
  CHECK(property_tag("fc.window-members") == "fc-center-window");
  CHECK(property_tag("fc.correspondence") == "fc-center-correspondence");
  CHECK(property_tag("adfin.k-probe") == "coefficient-orbit-finiteness");
  CHECK(property_tag("dietzmann.component.0") == "left-coideal-subalgebra");
  CHECK(property_tag("tensorfin.window") == "tensor-locally-finite-membership");
  CHECK_THROWS_AS(property_tag("unheard.of"), Error);
  CHECK_THROWS_AS(property_tag(""), Error);
}

TEST_CASE("exit codes summarize the worst status") {
  Report all_pass;
  all_pass.add("axioms.unit", CheckStatus::pass);
  CHECK(all_pass.all_pass());
  CHECK(all_pass.exit_code() == 0);

  Report with_fail;
  with_fail.add("axioms.unit", CheckStatus::pass);
  with_fail.add("axioms.counit", CheckStatus::fail);
  with_fail.add("adfin.orbit-growth", CheckStatus::evidence);
  CHECK_FALSE(with_fail.all_pass());
  CHECK(with_fail.exit_code() == 1);

  Report semidecided;
  semidecided.add("adfin.orbit-growth", CheckStatus::evidence);
  semidecided.add("fc.correspondence", CheckStatus::budget_exceeded);
  semidecided.add("axioms.unit", CheckStatus::pass);
  CHECK(semidecided.exit_code() == 2);
}

TEST_CASE("status names round-trip") {
  for (CheckStatus s : {CheckStatus::pass, CheckStatus::fail,
                        CheckStatus::evidence, CheckStatus::budget_exceeded})
    CHECK(check_status_from_string(to_string(s)) == s);
  CHECK(to_string(CheckStatus::budget_exceeded) == "budget-exceeded");
  CHECK_THROWS_AS(check_status_from_string("maybe"), ParseError);
}

TEST_CASE("serialized reports reparse and reprint byte-identically") {
  Report rep;
  rep.command = "verify --builtin sweedler";
  ordered_json data;
  data["trials"] = 25;
  data["witness"] = "(1 1) g != 1 (1 g)";
  rep.add("axioms.associativity", CheckStatus::fail, std::move(data));
  rep.add("adfin.orbit-growth", CheckStatus::evidence);

  std::string once = rep.render_json();
  Report back = Report::from_json(ordered_json::parse(once));
  CHECK(back.render_json() == once);
  CHECK(back.command == rep.command);
  CHECK(back.checks.size() == 2);
  CHECK(back.checks[1].data.at("witness") == "(1 1) g != 1 (1 g)");

  ordered_json doc = ordered_json::parse(once);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("version") == std::string(kArtifactVersion));
  CHECK_THROWS_AS(Report::from_json(ordered_json::parse("{\"schema\":2}")),
                  ParseError);
  CHECK_THROWS_AS(Report::from_json(ordered_json::parse("[]")), ParseError);
}

TEST_CASE("command line: axiom verification of builtins") {
  CliResult r = run_cli({"verify", "--builtin", "sweedler", "--json"});
  CHECK(r.exit_code == 0);
  ordered_json doc = parse_out(r);
  CHECK(doc.at("command") == "verify --builtin sweedler --json");
  CHECK(doc.at("checks").size() == 10);  // 7 axioms + 3 adjoint identities
  for (const ordered_json& c : doc.at("checks")) CHECK(c.at("status") == "pass");
  // the printed report is already in canonical form
  CHECK(Report::from_json(doc).render_json() == r.out);
  // ids arrive sorted
  std::string prev;
  for (const ordered_json& c : doc.at("checks")) {
    CHECK(prev < c.at("id").get<std::string>());
    prev = c.at("id");
  }

  // compact cycle notation in the builtin grammar
  CliResult s3 = run_cli({"verify", "--builtin", "group:perm:(123),(12)"});
  CHECK(s3.exit_code == 0);

  CliResult dual = run_cli({"verify", "--builtin", "dual:taft:3", "--json"});
  CHECK(dual.exit_code == 0);
}

TEST_CASE("command line: structure-constant files") {
  std::string text = write_hsc(sweedler(FieldDescriptor::rationals()));
  TempFile good("hopfad-good.hsc", text);
  CHECK(run_cli({"verify", good.str()}).exit_code == 0);

  // corrupting one multiplication triple must surface a failed axiom
  const std::string triple = "mult 0 0 0 1";
  auto pos = text.find(triple);
  REQUIRE(pos != std::string::npos);
  TempFile bad("hopfad-bad.hsc",
               text.replace(pos, triple.size(), "mult 0 0 0 -1"));
  CliResult r = run_cli({"verify", bad.str(), "--json"});
  CHECK(r.exit_code == 1);
  ordered_json doc = parse_out(r);
  bool witnessed = false;
  for (const ordered_json& c : doc.at("checks"))
    if (c.at("status") == "fail" && c.at("data").contains("witness"))
      witnessed = true;
  CHECK(witnessed);

  TempFile malformed("hopfad-malformed.hsc", "field Q\ndim oops\n");
  CHECK(run_cli({"verify", malformed.str()}).exit_code == 3);
  CHECK(run_cli({"verify", "/no/such/file.hsc"}).exit_code == 3);
  CHECK(run_cli({"verify"}).exit_code == 3);
  CHECK(run_cli({"verify", "--builtin", "sweedler", good.str()}).exit_code == 3);
}

TEST_CASE("command line: finite-conjugacy windows") {
  CliResult heis = run_cli({"fc", "--group", "heis", "--window", "3", "--json"});
  CHECK(heis.exit_code == 0);
  ordered_json hdoc = parse_out(heis);
  CHECK(find_check(hdoc, "fc.correspondence").at("status") == "pass");

  // rotations are exactly the finite-conjugacy elements of the infinite
  // dihedral window, via either spelling of the window flag
  for (const char* flag : {"--length", "--window"}) {
    CliResult dinf = run_cli({"fc", "dinf", flag, "8", "--json"});
    CHECK(dinf.exit_code == 0);
    ordered_json doc = parse_out(dinf);
    const ordered_json& wm = find_check(doc, "fc.window-members");
    CHECK(wm.at("data").at("count") == 17);
    for (const ordered_json& m : wm.at("data").at("members"))
      CHECK(m.get<std::string>().find('s') == std::string::npos);
  }

  // a finite class wider than the budget leaves the cross-check undecided
  CliResult tight = run_cli(
      {"fc", "--group", "perm:(012),(01)", "--budget", "2", "--json"});
  CHECK(tight.exit_code == 2);
  ordered_json tdoc = parse_out(tight);
  const ordered_json& corr = find_check(tdoc, "fc.correspondence");
  CHECK(corr.at("status") == "budget-exceeded");
  CHECK(corr.at("data").at("undecided").get<int>() > 0);

  CHECK(run_cli({"fc"}).exit_code == 3);
  CHECK(run_cli({"fc", "--group", "dinf", "heis"}).exit_code == 3);
  CHECK(run_cli({"fc", "--group", "nonsense"}).exit_code == 3);
}

TEST_CASE("command line: locally finite probes of presented algebras") {
  CliResult q = run_cli(
      {"adfin", "--algebra", "uq-sl2-quotient:3", "--window", "6", "--json"});
  CHECK(q.exit_code == 0);
  ordered_json qdoc = parse_out(q);
  CHECK(find_check(qdoc, "adfin.k-probe").at("status") == "pass");
  CHECK(find_check(qdoc, "adfin.window-left-coideal").at("status") == "pass");
  CHECK(find_check(qdoc, "adfin.antipode-stability").at("status") == "pass");

  CliResult gen = run_cli({"adfin", "--algebra", "uq-sl2", "--budget", "40", "--json"});
  CHECK(gen.exit_code == 2);
  ordered_json gdoc = parse_out(gen);
  const ordered_json& growth = find_check(gdoc, "adfin.orbit-growth");
  CHECK(growth.at("status") == "evidence");
  CHECK(growth.at("data").at("strictly-increasing") == true);

  CliResult dense = run_cli({"adfin", "--builtin", "sweedler", "--json"});
  CHECK(dense.exit_code == 0);
  CHECK(find_check(parse_out(dense), "adfin.whole-algebra").at("data")
            .at("locally-finite-dim") == 4);

  CHECK(run_cli({"adfin"}).exit_code == 3);
  CHECK(run_cli({"adfin", "--algebra", "uq-sl2", "--builtin", "sweedler"})
            .exit_code == 3);
  CHECK(run_cli({"adfin", "--algebra", "unknown"}).exit_code == 3);
}

TEST_CASE("command line: coideal family closure") {
  const std::string family = R"json({
    "ambient": { "kind": "dense", "builtin": "group:perm:(0 1 2 3);(0 2)" },
    "components": [
      [ { "[0,1,2,3]": "1" }, { "[1,2,3,0]": "1" },
        { "[2,3,0,1]": "1" }, { "[3,0,1,2]": "1" } ],
      [ { "[0,1,2,3]": "1" }, { "[2,3,0,1]": "1" },
        { "[2,1,0,3]": "1" }, { "[0,3,2,1]": "1" } ]
    ]
  })json";
  TempFile f("hopfad-d4.json", family);
  CliResult r = run_cli({"dietzmann", f.str(), "--json"});
  CHECK(r.exit_code == 0);
  ordered_json doc = parse_out(r);
  const ordered_json& filt = find_check(doc, "dietzmann.filtration");
  CHECK(filt.at("status") == "pass");
  CHECK(filt.at("data").at("s-star") == 2);
  CHECK(filt.at("data").at("closure-dim") == 8);
  CHECK(filt.at("data").at("dims") == ordered_json::array({6, 8, 8}));
  CHECK(find_check(doc, "dietzmann.straighten").at("status") == "pass");

  // a span that is not closed under multiplication violates the hypotheses
  const std::string broken = R"json({
    "ambient": { "kind": "dense", "builtin": "group:perm:(0 1 2 3);(0 2)" },
    "components": [ [ { "[0,1,2,3]": "1" }, { "[1,2,3,0]": "1" } ] ]
  })json";
  TempFile b("hopfad-broken.json", broken);
  CliResult rb = run_cli({"dietzmann", b.str(), "--json"});
  CHECK(rb.exit_code == 1);
  ordered_json bdoc = parse_out(rb);
  const ordered_json& fam = find_check(bdoc, "dietzmann.family");
  CHECK(fam.at("status") == "fail");
  CHECK(fam.at("data").contains("witness"));

  TempFile junk("hopfad-junk.json", "{ not json");
  CHECK(run_cli({"dietzmann", junk.str()}).exit_code == 3);
  TempFile label("hopfad-label.json", R"json({
    "ambient": { "kind": "dense", "builtin": "sweedler" },
    "components": [ [ { "nope": "1" } ] ]
  })json");
  CHECK(run_cli({"dietzmann", label.str()}).exit_code == 3);
  CHECK(run_cli({"dietzmann"}).exit_code == 3);
  CHECK(run_cli({"dietzmann", "/no/such/family.json"}).exit_code == 3);
}

TEST_CASE("command line: tensor products of integer-group modules") {
  CliResult r = run_cli({"tensorfin", "--json"});
  CHECK(r.exit_code == 2);  // regular summands are only budget-refuted
  ordered_json doc = parse_out(r);
  const ordered_json& pr = find_check(doc, "tensorfin.product-rule");
  CHECK(pr.at("status") == "evidence");
  CHECK(pr.at("data").at("contradictions") == 0);
  CHECK(find_check(doc, "tensorfin.window").at("data").at("member-keys") == 1);

  // two finite-type summands per factor decide every probe
  CliResult fin = run_cli({"tensorfin", "triv+char:-1,triv+char:2", "--json"});
  CHECK(fin.exit_code == 0);
  ordered_json fdoc = parse_out(fin);
  const ordered_json& w = find_check(fdoc, "tensorfin.window");
  CHECK(w.at("status") == "pass");
  CHECK(w.at("data").at("member-keys") == 4);
  CHECK(w.at("data").at("probes") == 4);

  CHECK(run_cli({"tensorfin", "reg,reg"}).exit_code == 3);       // one atom
  CHECK(run_cli({"tensorfin", "reg+triv"}).exit_code == 3);      // one factor
  CHECK(run_cli({"tensorfin", "reg+bogus,reg+triv"}).exit_code == 3);
  CHECK(run_cli({"tensorfin", "reg+char:0,reg+triv"}).exit_code == 3);
}

TEST_CASE("command line: global argument handling") {
  CHECK(run_cli({}).exit_code == 3);
  CHECK(run_cli({"frobnicate"}).exit_code == 3);
  CHECK(run_cli({"--help"}).exit_code == 0);
  CHECK(run_cli({"verify", "--help"}).exit_code == 0);
  CHECK(run_cli({"fc", "dinf", "--budget", "0"}).exit_code == 3);
  CHECK(run_cli({"fc", "dinf", "--window", "-1"}).exit_code == 3);

  setenv("HOPFAD_BUDGET", "5", 1);
  CliResult scoped = run_cli({"fc", "--group", "perm:(012),(01)", "--json"});
  CHECK(find_check(parse_out(scoped), "fc.correspondence").at("data")
            .at("budget") == 5);
  setenv("HOPFAD_BUDGET", "junk", 1);
  CHECK(run_cli({"fc", "--group", "heis"}).exit_code == 3);
  setenv("HOPFAD_BUDGET", "-2", 1);
  CHECK(run_cli({"fc", "--group", "heis"}).exit_code == 3);
  unsetenv("HOPFAD_BUDGET");
}

}  // TEST_SUITE
