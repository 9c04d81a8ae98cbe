#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <map>

#include "cli_runner.hpp"

namespace {

using Json = nlohmann::ordered_json;

std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.starts_with(key + "\t")) return line.substr(key.size() + 1);
  return "<missing>";
}

// Rows of one table of a text report.
std::vector<std::string> table_rows(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> rows;
  bool inside = false, header = false;
  while (std::getline(in, line)) {
    if (line.starts_with("# ")) {
      inside = line == "# " + name;
      header = inside;
      continue;
    }
    if (!inside) continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

std::string render(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// The text report rebuilt from the JSON document.
std::string text_from_json(const Json& doc) {
  std::string s = "command\t" + doc["command"].get<std::string>() + "\n";
  for (const auto& [k, v] : doc["fields"].items()) s += k + "\t" + render(v) + "\n";
  for (const auto& [name, t] : doc["tables"].items()) {
    s += "# " + name + "\n";
    std::string header;
    for (const auto& c : t["columns"]) header += (header.empty() ? "" : "\t") + c.get<std::string>();
    s += header + "\n";
    for (const auto& row : t["rows"]) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "\t" : "") + render(row[i]);
      s += line + "\n";
    }
  }
  return s;
}

}  // namespace

TEST_CASE("corpus exit codes and byte determinism") {
  const auto corpus = cli::load_corpus(DTORSION_CLI_CORPUS);
  REQUIRE(corpus.size() > 40);
  for (const auto& inv : corpus) {
    INFO(inv.args);
    const auto a = cli::run(inv.args), b = cli::run(inv.args);
    CHECK(a.exit_code == inv.expected_exit);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    if (inv.expected_exit == 2) CHECK(a.out.empty());
  }
}

TEST_CASE("text and json carry the same content") {
  for (const auto& inv : cli::load_corpus(DTORSION_CLI_CORPUS)) {
    if (inv.expected_exit != 0 || inv.args.find("--json") != std::string::npos) continue;
    INFO(inv.args);
    const auto text = cli::run(inv.args), json = cli::run(inv.args + " --json");
    REQUIRE(json.exit_code == 0);
    const auto doc = Json::parse(json.out);
    CHECK(doc["format"] == "dtorsion-report");
    CHECK(doc["version"] == 1);
    CHECK(doc["passed"] == true);
    auto expected = text.out;
    // the echo differs by the appended flag
    expected.replace(0, expected.find('\n'), "command\t" + inv.args + " --json");
    CHECK(text_from_json(doc) == expected);
  }
}

TEST_CASE("group and cohomology reports") {
  const auto info = cli::run("info Z2xZ2").out;
  CHECK(field(info, "order") == "4");
  CHECK(field(info, "conjugacy_classes") == "4");
  CHECK(field(info, "exponent") == "2");
  CHECK(field(info, "abelianization") == "[2,2]");
  CHECK(table_rows(info, "classes").size() == 4);

  CHECK(field(cli::run("cohomology Z2xZ2 -p 2").out, "result") == "H^2(G,U(1)) = Z/2");
  CHECK(field(cli::run("cohomology Z2xZ2xZ2").out, "result") == "H^2(G,U(1)) = Z/2 + Z/2 + Z/2");
  CHECK(field(cli::run("cohomology Q8").out, "result") == "H^2(G,U(1)) = 0");
  CHECK(field(cli::run("cohomology Z4 -p 3").out, "result") == "H^3(G,U(1)) = Z/4");
  CHECK(field(cli::run("info @s3.group").out, "order") == "6");
}

TEST_CASE("phase table") {
  const auto out = cli::run("phases Z2xZ2 --class 1").out;
  const auto rows = table_rows(out, "epsilon");
  REQUIRE(rows.size() == 16);
  int minus = 0;
  std::string prev;
  for (const auto& r : rows) {
    minus += r.ends_with("\t1/2");
    CHECK(r.find('.') == std::string::npos);  // exact fractions only
  }
  CHECK(minus == 6);
  CHECK(field(out, "nontrivial_phases") == "6");
  CHECK(rows.front() == "0\t0\t0/1");
  CHECK(rows[6] == "1\t2\t1/2");

  const auto orbits = table_rows(cli::run("phases D4 --class 1 --quotient-conjugation").out, "orbits");
  CHECK(!orbits.empty());
  CHECK(orbits.size() < table_rows(cli::run("phases D4 --class 1").out, "epsilon").size());
}

TEST_CASE("partition, membrane and representations") {
  CHECK(field(cli::run("partition S3").out, "unit_amplitudes") == "3");
  CHECK(field(cli::run("partition Z2xZ2 --class 1").out, "unit_amplitudes") == "1");
  CHECK(field(cli::run("membrane Z2xZ2xZ2 --class 1").out, "sl3_invariant") == "true");

  const auto pr = cli::run("projrep Z2xZ2 --class 1").out;
  CHECK(field(pr, "irrep_dimensions") == "[2]");
  CHECK(field(pr, "regular_classes") == "1");
  const auto m = table_rows(cli::run("projrep Z3xZ3 --class 1 --emit-matrices").out, "matrices");
  CHECK(m.size() == 81);
  CHECK(field(cli::run("projrep Z3xZ3 --class 1").out, "irrep_dimensions") == "[3]");
}

TEST_CASE("euler and cech reports") {
  const auto k3 = cli::run("inertia Z2 torus4").out;
  CHECK(field(k3, "conjugacy_total") == "24");
  CHECK(field(k3, "pair_sum") == "24");
  CHECK(table_rows(k3, "inertia") == std::vector<std::string>{"0\t1\t2\t[16,64,96,64,16]\t0\t8", "1\t1\t2\t[16]\t16\t16"});
  CHECK(field(cli::run("euler Z2 circle-reflection.cplx").out, "orbifold_euler_sum") == "3");

  const auto bad = cli::run("cech verify circle-bundle-bad.cech");
  CHECK(bad.exit_code == 1);
  CHECK(field(bad.out, "equivariant") == "false");
  CHECK(table_rows(bad.out, "violations").front().starts_with("bundle\tbundle.transition\t"));

  const auto d = cli::run("cech diff circle-bundle.cech circle-bundle-twisted.cech").out;
  CHECK(table_rows(d, "character") == std::vector<std::string>{"0\t0\t0/1", "0\t1\t1/2", "0\t2\t0/1", "0\t3\t1/2"});
  CHECK(field(cli::run("cech diff v4-point-trivial.cech v4-point-torsion.cech").out, "class") == "1");
}

TEST_CASE("diagnostics go to standard error") {
  const auto r = cli::run("phases Z2xZ2 --class 9");
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
  const auto help = cli::run("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("projrep") != std::string::npos);
}
