#include "dtorsion.h"

#include <algorithm>
#include <new>
#include <string>

#include "dtorsion/cohomology.hpp"
#include "dtorsion/error.hpp"
#include "dtorsion/report.hpp"
#include "dtorsion/torsion.hpp"

struct dt_group {
  dtorsion::GroupPtr group;
};

struct dt_cocycle {
  dtorsion::Cochain cochain;
};

struct dt_report {
  std::string data;
  bool passed = true;
};

namespace {

using namespace dtorsion;

thread_local std::string last_error;

dt_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return DT_ERR_PARSE;
    case ErrorKind::Invalid: return DT_ERR_INVALID;
    case ErrorKind::Unsupported: return DT_ERR_UNSUPPORTED;
    case ErrorKind::Limit: return DT_ERR_LIMIT;
    case ErrorKind::Argument: return DT_ERR_ARGUMENT;
    case ErrorKind::Io: return DT_ERR_IO;
    case ErrorKind::Numerical: return DT_ERR_NUMERICAL;
    case ErrorKind::Internal: return DT_ERR_INTERNAL;
  }
  return DT_ERR_INTERNAL;
}

template <class F>
dt_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return DT_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DT_ERR_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorKind::Argument, std::string(what) + " is null");
}

ReportOptions convert(const dt_options* o) {
  dt_options d;
  dt_options_init(&d);
  if (!o) o = &d;
  ReportOptions r;
  r.command = o->command ? o->command : "";
  r.degree = o->degree;
  r.zn = o->zn_coefficients != 0;
  if (o->modulus != 0) r.modulus = o->modulus;
  if (o->class_index >= 0) r.class_index = o->class_index;
  r.quotient_conjugation = o->quotient_conjugation != 0;
  r.emit_matrices = o->emit_matrices != 0;
  return r;
}

dt_status emit(const dt_options* o, dt_report** out, const auto& build) {
  return guarded([&] {
    need(out, "output pointer");
    *out = nullptr;
    const Report r = build(convert(o));
    *out = new dt_report{(o && o->json) ? r.json() : r.text(), r.passed};
  });
}

dt_status group_report(const char* spec, const dt_options* o, dt_report** out,
                       Report (*fn)(const GroupPtr&, const ReportOptions&)) {
  return emit(o, out, [&](const ReportOptions& ro) {
    need(spec, "group spec");
    return fn(parse_group_spec(spec), ro);
  });
}

GComplex load_complex(const char* spec, const char* text, const char* builtin) {
  need(spec, "group spec");
  require((text == nullptr) != (builtin == nullptr), ErrorKind::Argument,
          "give exactly one of complex text and builtin name");
  auto g = parse_group_spec(spec);
  if (text) return parse_complex(g, text);
  auto x = builtin_complex(builtin);
  require(x.group()->order() == g->order() && std::ranges::equal(x.group()->table(), g->table()),
          ErrorKind::Invalid,
          "builtin complex " + std::string(builtin) + " is defined over " + x.group()->name() + ", not " + g->name());
  return x;
}

}  // namespace

extern "C" {

void dt_options_init(dt_options* o) {
  if (!o) return;
  *o = dt_options{};
  o->degree = 2;
  o->class_index = -1;
}

int dt_api_version(void) { return DT_API_VERSION; }

const char* dt_version(void) { return "1.0.0"; }

const char* dt_last_error(void) { return last_error.c_str(); }

const char* dt_status_name(dt_status s) {
  switch (s) {
    case DT_OK: return "ok";
    case DT_ERR_PARSE: return "parse error";
    case DT_ERR_INVALID: return "invalid input";
    case DT_ERR_UNSUPPORTED: return "unsupported";
    case DT_ERR_LIMIT: return "limit exceeded";
    case DT_ERR_ARGUMENT: return "bad argument";
    case DT_ERR_IO: return "i/o error";
    case DT_ERR_NUMERICAL: return "numerical failure";
    case DT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

dt_status dt_group_parse(const char* spec, dt_group** out) {
  return guarded([&] {
    need(spec, "group spec");
    need(out, "output pointer");
    *out = nullptr;
    *out = new dt_group{parse_group_spec(spec)};
  });
}

void dt_group_free(dt_group* g) { delete g; }

int dt_group_order(const dt_group* g) { return g ? g->group->order() : 0; }

const char* dt_group_name(const dt_group* g) { return g ? g->group->name().c_str() : ""; }

dt_status dt_group_multiply(const dt_group* g, int a, int b, int* out) {
  return guarded([&] {
    need(g, "group");
    need(out, "output pointer");
    const int n = g->group->order();
    require(a >= 0 && a < n && b >= 0 && b < n, ErrorKind::Argument, "element out of range");
    *out = g->group->mul(a, b);
  });
}

dt_status dt_cohomology_factors(const dt_group* g, int degree, int zn, int64_t modulus, int64_t* factors,
                                size_t capacity, size_t* count) {
  return guarded([&] {
    need(g, "group");
    need(count, "count pointer");
    require(factors != nullptr || capacity == 0, ErrorKind::Argument, "factor buffer is null");
    auto h = zn ? cohomology_zn(g->group, degree, modulus ? modulus : g->group->order())
                : cohomology_u1(g->group, degree, modulus ? std::optional<std::int64_t>(modulus) : std::nullopt);
    const auto& f = h.invariant_factors();
    *count = f.size();
    std::copy_n(f.begin(), std::min(capacity, f.size()), factors);
  });
}

dt_status dt_cocycle_representative(const dt_group* g, int degree, int64_t modulus, int64_t class_index,
                                    dt_cocycle** out) {
  return guarded([&] {
    need(g, "group");
    need(out, "output pointer");
    *out = nullptr;
    auto h = cohomology_u1(g->group, degree, modulus ? std::optional<std::int64_t>(modulus) : std::nullopt);
    require(class_index >= 0 && class_index < h.order(), ErrorKind::Argument, "class index out of range");
    *out = new dt_cocycle{h.representative(class_index)};
  });
}

void dt_cocycle_free(dt_cocycle* c) { delete c; }

int64_t dt_cocycle_modulus(const dt_cocycle* c) { return c ? c->cochain.modulus() : 0; }

int dt_cocycle_degree(const dt_cocycle* c) { return c ? c->cochain.degree() : 0; }

dt_status dt_cocycle_value(const dt_cocycle* c, const int* elements, size_t count, int64_t* out) {
  return guarded([&] {
    need(c, "cocycle");
    need(elements, "element array");
    need(out, "output pointer");
    require(count == std::size_t(c->cochain.degree()), ErrorKind::Argument, "tuple length does not match degree");
    for (size_t i = 0; i < count; ++i)
      require(elements[i] >= 0 && elements[i] < c->cochain.group()->order(), ErrorKind::Argument,
              "element out of range");
    *out = c->cochain(std::span<const Element>(elements, count));
  });
}

dt_status dt_epsilon(const dt_cocycle* c, int g, int h, int64_t* num, int64_t* den) {
  return guarded([&] {
    need(c, "cocycle");
    need(num, "output pointer");
    need(den, "output pointer");
    const auto p = epsilon(c->cochain, g, h).reduced();
    *num = p.exponent();
    *den = p.modulus();
  });
}

dt_status dt_report_info(const char* g, const dt_options* o, dt_report** out) {
  return group_report(g, o, out, report_info);
}
dt_status dt_report_cohomology(const char* g, const dt_options* o, dt_report** out) {
  return group_report(g, o, out, report_cohomology);
}
dt_status dt_report_cocycles(const char* g, const dt_options* o, dt_report** out) {
  return group_report(g, o, out, report_cocycles);
}
dt_status dt_report_phases(const char* g, const dt_options* o, dt_report** out) {
  return group_report(g, o, out, report_phases);
}
dt_status dt_report_partition(const char* g, const dt_options* o, dt_report** out) {
  return group_report(g, o, out, report_partition);
}
dt_status dt_report_membrane(const char* g, const dt_options* o, dt_report** out) {
  return group_report(g, o, out, report_membrane);
}
dt_status dt_report_projrep(const char* g, const dt_options* o, dt_report** out) {
  return group_report(g, o, out, report_projrep);
}

dt_status dt_report_euler(const char* g, const char* text, const char* builtin, const dt_options* o,
                          dt_report** out) {
  return emit(o, out, [&](const ReportOptions& ro) { return report_euler(load_complex(g, text, builtin), ro); });
}

dt_status dt_report_inertia(const char* g, const char* text, const char* builtin, const dt_options* o,
                            dt_report** out) {
  return emit(o, out, [&](const ReportOptions& ro) { return report_inertia(load_complex(g, text, builtin), ro); });
}

dt_status dt_report_cech_verify(const char* text, const dt_options* o, dt_report** out) {
  return emit(o, out, [&](const ReportOptions& ro) {
    need(text, "document");
    return report_cech_verify(parse_cech(text), ro);
  });
}

dt_status dt_report_cech_diff(const char* text1, const char* text2, const dt_options* o, dt_report** out) {
  return emit(o, out, [&](const ReportOptions& ro) {
    need(text1, "first document");
    need(text2, "second document");
    return report_cech_diff(parse_cech(text1), parse_cech(text2), ro);
  });
}

const char* dt_report_data(const dt_report* r) { return r ? r->data.c_str() : ""; }

size_t dt_report_size(const dt_report* r) { return r ? r->data.size() : 0; }

int dt_report_passed(const dt_report* r) { return r && r->passed ? 1 : 0; }

void dt_report_free(dt_report* r) { delete r; }

const char* dt_builtin_complexes(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : builtin_complex_names()) s += n + "\n";
    return s;
  }();
  return names.c_str();
}

}  // extern "C"
