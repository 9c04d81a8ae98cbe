// Command-line front end; talks to the library only through dtorsion.h.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dtorsion.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Io {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Io{"cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// "@path" reads the group spec from a file.
std::string group_spec(const std::string& arg) {
  if (!arg.starts_with("@")) return arg;
  std::string s = read_file(arg.substr(1));
  const auto b = s.find_first_not_of(" \t\r\n"), e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

int finish(dt_status st, dt_report* report) {
  if (st != DT_OK) {
    std::cerr << "error: " << dt_status_name(st) << ": " << dt_last_error() << "\n";
    return kExitDomain;
  }
  std::fwrite(dt_report_data(report), 1, dt_report_size(report), stdout);
  const bool passed = dt_report_passed(report);
  dt_report_free(report);
  if (!passed) {
    std::cerr << "error: verification failed\n";
    return kExitDomain;
  }
  return kExitOk;
}

std::string echo(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--timing") continue;
    if (!s.empty()) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete torsion toolkit: group cohomology, twisted-sector phases, orbifold Euler "
               "characteristics, projective representations and Cech equivariant structures."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(dt_version()));

  bool json = false, timing = false;
  app.add_flag("--json", json, "Emit a versioned JSON document instead of text");
  app.add_flag("--timing", timing, "Print the wall time to standard error");

  std::string group, complex, file1, file2;
  int degree = 2;
  std::int64_t modulus = 0, class_index = -1;
  bool zn = false, quotient = false, matrices = false;

  auto group_arg = [&](CLI::App* c) {
    c->add_option("group", group, "Group spec (Zn, AxB, Dn, Q8, Sn, An, 'perm ...', 'table ...') or @file")
        ->required();
  };
  auto modulus_opt = [&](CLI::App* c) {
    c->add_option("--modulus", modulus, "Coefficient modulus N (default |G|)")->check(CLI::PositiveNumber);
  };
  auto class_opt = [&](CLI::App* c) {
    c->add_option("--class", class_index, "Cohomology class index")->check(CLI::NonNegativeNumber);
  };

  auto* info = app.add_subcommand("info", "Order, conjugacy classes, exponent and abelianization");
  group_arg(info);

  auto* cohom = app.add_subcommand("cohomology", "Invariant factors of H^p(G, U(1)) or H^p(G, Z/N)");
  group_arg(cohom);
  cohom->add_option("-p,--degree", degree, "Degree p")->check(CLI::Range(1, 3));
  cohom->add_flag("--zn", zn, "Z/N coefficients instead of U(1)");
  modulus_opt(cohom);

  auto* cocycles = app.add_subcommand("cocycles", "Class list, or the canonical cocycle of one class");
  group_arg(cocycles);
  cocycles->add_option("-p,--degree", degree, "Degree p")->check(CLI::Range(1, 3));
  cocycles->add_flag("--zn", zn, "Z/N coefficients instead of U(1)");
  modulus_opt(cocycles);
  class_opt(cocycles);

  auto* phases = app.add_subcommand("phases", "Twisted-sector phases epsilon(g,h) of an H^2 class");
  group_arg(phases);
  class_opt(phases);
  modulus_opt(phases);
  phases->add_flag("--quotient-conjugation", quotient, "One row per simultaneous conjugation orbit");

  auto* partition = app.add_subcommand("partition", "Orbifold partition function as a sum over sectors");
  group_arg(partition);
  class_opt(partition);
  modulus_opt(partition);
  partition->add_flag("--quotient-conjugation", quotient, "Merge sectors per conjugation orbit");

  auto* membrane = app.add_subcommand("membrane", "Membrane phases of an H^3 class on commuting triples");
  group_arg(membrane);
  class_opt(membrane);
  modulus_opt(membrane);

  auto* euler = app.add_subcommand("euler", "Euler characteristics of a G-complex");
  auto* inertia = app.add_subcommand("inertia", "Inertia decomposition of a G-complex");
  for (auto* c : {euler, inertia}) {
    group_arg(c);
    c->add_option("complex", complex,
                  "Complex file, or a builtin: circle-involution, circle-rotation<m>, sphere-antipodal, "
                  "sphere-reflection, torus<k>")
        ->required();
  }

  auto* projrep = app.add_subcommand("projrep", "Twisted regular representation and irreducible dimensions");
  group_arg(projrep);
  class_opt(projrep);
  modulus_opt(projrep);
  projrep->add_flag("--emit-matrices", matrices, "List the monomial matrices as (g, row, col, phase)");

  auto* cech = app.add_subcommand("cech", "Cech equivariant structures");
  cech->require_subcommand(1);
  auto* verify = cech->add_subcommand("verify", "Check the equivariance relations of a document");
  verify->add_option("file", file1, "Cech document")->required();
  auto* diff = cech->add_subcommand("diff", "Difference of two equivariant structures on one site");
  diff->add_option("file1", file1, "First document")->required();
  diff->add_option("file2", file2, "Second document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  dt_options opt;
  dt_options_init(&opt);
  const std::string command = echo(argc, argv);
  opt.command = command.c_str();
  opt.json = json;
  opt.degree = degree;
  opt.zn_coefficients = zn;
  opt.modulus = modulus;
  opt.class_index = class_index;
  opt.quotient_conjugation = quotient;
  opt.emit_matrices = matrices;

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    dt_report* r = nullptr;
    dt_status st = DT_OK;
    if (*info) st = dt_report_info(group_spec(group).c_str(), &opt, &r);
    else if (*cohom) st = dt_report_cohomology(group_spec(group).c_str(), &opt, &r);
    else if (*cocycles) st = dt_report_cocycles(group_spec(group).c_str(), &opt, &r);
    else if (*phases) st = dt_report_phases(group_spec(group).c_str(), &opt, &r);
    else if (*partition) st = dt_report_partition(group_spec(group).c_str(), &opt, &r);
    else if (*membrane) st = dt_report_membrane(group_spec(group).c_str(), &opt, &r);
    else if (*projrep) st = dt_report_projrep(group_spec(group).c_str(), &opt, &r);
    else if (*euler || *inertia) {
      const bool is_file = std::filesystem::is_regular_file(complex);
      const std::string text = is_file ? read_file(complex) : std::string();
      const char* t = is_file ? text.c_str() : nullptr;
      const char* b = is_file ? nullptr : complex.c_str();
      st = *euler ? dt_report_euler(group_spec(group).c_str(), t, b, &opt, &r)
                  : dt_report_inertia(group_spec(group).c_str(), t, b, &opt, &r);
    } else if (*verify) {
      st = dt_report_cech_verify(read_file(file1).c_str(), &opt, &r);
    } else if (*diff) {
      st = dt_report_cech_diff(read_file(file1).c_str(), read_file(file2).c_str(), &opt, &r);
    }
    code = finish(st, r);
  } catch (const Io& e) {
    std::cerr << "error: i/o error: " << e.message << "\n";
    code = kExitDomain;
  }
  if (timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "timing\t" << ms << " ms\n";
  }
  return code;
}
