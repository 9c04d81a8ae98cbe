#include "dtorsion/cochain.hpp"

#include <sstream>

#include "dtorsion/error.hpp"

namespace dtorsion {

std::size_t Cochain::table_size(int order, int degree) {
  std::size_t s = 1;
  for (int i = 0; i < degree; ++i) s *= std::size_t(order - 1);
  return s;
}

Cochain::Cochain(GroupPtr group, int degree, std::int64_t modulus)
    : group_(std::move(group)), degree_(degree), modulus_(modulus) {
  require(group_ != nullptr, ErrorKind::Argument, "cochain needs a group");
  require(degree_ >= 0 && degree_ <= kMaxDegree, ErrorKind::Argument,
          "cochain degree must be in 0.." + std::to_string(kMaxDegree));
  require(modulus_ > 0, ErrorKind::Argument, "cochain modulus must be positive");
  values_.assign(table_size(group_->order(), degree_), 0);
}

Cochain Cochain::from_function(GroupPtr group, int degree, std::int64_t modulus,
                               const std::function<std::int64_t(std::span<const Element>)>& f) {
  Cochain c(std::move(group), degree, modulus);
  const int n = c.group_->order();
  std::vector<Element> t(degree, 0);
  // every tuple, including those with identity entries, to check normalization
  std::size_t total = 1;
  for (int i = 0; i < degree; ++i) total *= std::size_t(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (int i = degree - 1; i >= 0; --i) {
      t[i] = Element(r % n);
      r /= n;
    }
    c.set(t, f(t));
  }
  return c;
}

std::size_t Cochain::index_of(std::span<const Element> args) const {
  require(int(args.size()) == degree_, ErrorKind::Argument,
          "cochain of degree " + std::to_string(degree_) + " evaluated on " +
              std::to_string(args.size()) + " arguments");
  std::size_t idx = 0;
  const std::size_t base = std::size_t(group_->order() - 1);
  for (Element g : args) {
    require(g >= 0 && g < group_->order(), ErrorKind::Argument, "element out of range");
    int r = group_->nonidentity_rank(g);
    if (r < 0) return std::size_t(-1);
    idx = idx * base + std::size_t(r);
  }
  return idx;
}

std::int64_t Cochain::operator()(std::span<const Element> args) const {
  std::size_t i = index_of(args);
  return i == std::size_t(-1) ? 0 : values_[i];
}

void Cochain::set(std::span<const Element> args, std::int64_t value) {
  std::size_t i = index_of(args);
  std::int64_t v = mod_floor(value, modulus_);
  if (i == std::size_t(-1)) {
    require(v == 0, ErrorKind::Invalid,
            "normalized cochain must vanish when an argument is the identity");
    return;
  }
  values_[i] = v;
}

void Cochain::assign(std::vector<std::int64_t> values) {
  require(values.size() == values_.size(), ErrorKind::Argument, "cochain table size mismatch");
  for (auto& v : values) v = mod_floor(v, modulus_);
  values_ = std::move(values);
}

std::vector<Element> Cochain::tuple_at(std::size_t index) const {
  std::vector<Element> t(degree_);
  const std::size_t base = std::size_t(group_->order() - 1);
  for (int i = degree_ - 1; i >= 0; --i) {
    t[i] = group_->nonidentity_element(int(index % base));
    index /= base;
  }
  return t;
}

bool Cochain::is_zero() const {
  for (auto v : values_)
    if (v != 0) return false;
  return true;
}

void Cochain::check_compatible(const Cochain& o) const {
  require(group_ == o.group_ || group_->table().size() == o.group_->table().size(),
          ErrorKind::Argument, "cochains over different groups");
  require(degree_ == o.degree_ && modulus_ == o.modulus_, ErrorKind::Argument,
          "cochains of different degree or modulus");
}

Cochain Cochain::operator+(const Cochain& o) const {
  check_compatible(o);
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i)
    r.values_[i] = (values_[i] + o.values_[i]) % modulus_;
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::operator-() const { return scaled(-1); }

Cochain Cochain::scaled(std::int64_t k) const {
  Cochain r = *this;
  std::int64_t km = mod_floor(k, modulus_);
  for (auto& v : r.values_) v = std::int64_t((__int128)v * km % modulus_);
  return r;
}

Cochain Cochain::over(std::int64_t modulus) const {
  require(modulus % modulus_ == 0, ErrorKind::Argument,
          "target modulus must be a multiple of " + std::to_string(modulus_));
  Cochain r(group_, degree_, modulus);
  std::int64_t f = modulus / modulus_;
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = values_[i] * f;
  return r;
}

bool Cochain::operator==(const Cochain& o) const {
  return degree_ == o.degree_ && modulus_ == o.modulus_ && values_ == o.values_;
}

std::string Cochain::to_text() const {
  std::ostringstream out;
  out << "cocycle p=" << degree_ << " N=" << modulus_ << " group=" << group_->name() << "\n";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == 0) continue;
    for (Element g : tuple_at(i)) out << g << " ";
    out << values_[i] << "\n";
  }
  return out.str();
}

Cochain Cochain::parse(GroupPtr group, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int degree = -1;
  std::int64_t modulus = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream h(line);
    std::string word;
    h >> word;
    require(word == "cocycle", ErrorKind::Parse, "cochain text must start with 'cocycle'");
    while (h >> word) {
      if (word.rfind("p=", 0) == 0) degree = std::stoi(word.substr(2));
      else if (word.rfind("N=", 0) == 0) modulus = std::stoll(word.substr(2));
    }
    break;
  }
  require(degree >= 0 && modulus > 0, ErrorKind::Parse, "cochain header needs p=<p> and N=<N>");
  Cochain c(std::move(group), degree, modulus);
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream row(line);
    std::vector<long long> nums;
    long long v;
    while (row >> v) nums.push_back(v);
    require(row.eof() && int(nums.size()) == degree + 1, ErrorKind::Parse,
            "cochain entry line must hold " + std::to_string(degree) + " elements and a value");
    std::vector<Element> t(nums.begin(), nums.end() - 1);
    c.set(t, nums.back());
  }
  return c;
}

// ---------------------------------------------------------------------------

namespace {

// Integer values of d(c) on every normalized (p+1)-tuple, with c given as a
// function on p-tuples (returning 0 on tuples containing the identity).
template <class F>
std::vector<std::int64_t> integer_differential(const FiniteGroup& g, int p, F&& value) {
  const int q = p + 1;
  const std::size_t size = Cochain::table_size(g.order(), q);
  const std::size_t base = std::size_t(g.order() - 1);
  std::vector<std::int64_t> out(size, 0);
  std::vector<Element> t(q), face(p);
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::size_t r = idx;
    for (int i = q - 1; i >= 0; --i) {
      t[i] = g.nonidentity_element(int(r % base));
      r /= base;
    }
    std::int64_t acc = 0;
    for (int i = 0; i < p; ++i) face[i] = t[i + 1];
    acc += value(face);
    for (int i = 1; i <= p; ++i) {
      int k = 0;
      for (int j = 0; j < q; ++j) {
        if (j == i - 1) {
          face[k++] = g.mul(t[j], t[j + 1]);
          ++j;
        } else {
          face[k++] = t[j];
        }
      }
      acc += (i % 2 ? -1 : 1) * value(face);
    }
    for (int i = 0; i < p; ++i) face[i] = t[i];
    acc += ((p + 1) % 2 ? -1 : 1) * value(face);
    out[idx] = acc;
  }
  return out;
}

}  // namespace

Cochain coboundary(const Cochain& c) {
  require(c.degree() <= 3, ErrorKind::Argument, "coboundary defined for degree <= 3");
  auto vals = integer_differential(*c.group(), c.degree(),
                                   [&](std::span<const Element> t) { return c(t); });
  Cochain out(c.group(), c.degree() + 1, c.modulus());
  out.assign(std::move(vals));
  return out;
}

bool is_cocycle(const Cochain& c) { return coboundary(c).is_zero(); }

Cochain bockstein(const Cochain& c) {
  require(c.degree() <= 3, ErrorKind::Argument, "Bockstein defined for degree <= 3");
  const std::int64_t n = c.modulus();
  auto vals = integer_differential(*c.group(), c.degree(),
                                   [&](std::span<const Element> t) { return c(t); });
  for (auto& v : vals) {
    require(v % n == 0, ErrorKind::Invalid, "Bockstein of a non-cocycle");
    v /= n;
  }
  Cochain out(c.group(), c.degree() + 1, n);
  out.assign(std::move(vals));
  return out;
}

SparseMatrix bar_differential(const FiniteGroup& g, int p) {
  require(p >= 0 && p <= 3, ErrorKind::Argument, "bar differential defined for degree <= 3");
  const int q = p + 1;
  const std::size_t rows = Cochain::table_size(g.order(), q);
  const std::size_t cols = Cochain::table_size(g.order(), p);
  const std::size_t base = std::size_t(g.order() - 1);
  SparseMatrix m{int(rows), int(cols)};
  std::vector<Element> t(q), face(p);
  auto column = [&](std::span<const Element> f) -> long {
    std::size_t idx = 0;
    for (Element x : f) {
      int r = g.nonidentity_rank(x);
      if (r < 0) return -1;
      idx = idx * base + std::size_t(r);
    }
    return long(idx);
  };
  for (std::size_t idx = 0; idx < rows; ++idx) {
    std::size_t r = idx;
    for (int i = q - 1; i >= 0; --i) {
      t[i] = g.nonidentity_element(int(r % base));
      r /= base;
    }
    std::vector<SparseMatrix::Entry> entries;
    auto add = [&](std::int64_t sign) {
      long c = column(face);
      if (c >= 0) entries.emplace_back(int(c), sign);
    };
    for (int i = 0; i < p; ++i) face[i] = t[i + 1];
    add(1);
    for (int i = 1; i <= p; ++i) {
      int k = 0;
      for (int j = 0; j < q; ++j) {
        if (j == i - 1) {
          face[k++] = g.mul(t[j], t[j + 1]);
          ++j;
        } else {
          face[k++] = t[j];
        }
      }
      add(i % 2 ? -1 : 1);
    }
    for (int i = 0; i < p; ++i) face[i] = t[i];
    add((p + 1) % 2 ? -1 : 1);
    m.set_row(int(idx), std::move(entries));
  }
  return m;
}

}  // namespace dtorsion
