// jointensor command line: decompositions, storage and eigenvalue sweeps,
// rank verification, and the dense-oracle harness.

#include "cli.hpp"

#include <omp.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "jointensor/contract.hpp"
#include "jointensor/dense.hpp"
#include "jointensor/error.hpp"
#include "jointensor/polyadic.hpp"
#include "jointensor/power_method.hpp"
#include "jointensor/rank.hpp"
#include "jointensor/serialize.hpp"
#include "jointensor/storage.hpp"
#include "jointensor/tensor_train.hpp"

namespace jointensor::cli {

namespace {

struct RunSpec {
  std::string command;
  std::string lattice = "divisor";
  std::optional<std::size_t> range;
  std::string list;
  std::string set_file;
  std::string f = "identity";
  std::size_t d = 4;
  std::string mode;  // empty: the valuation's default
  std::uint64_t seed = 0x5eed;
  std::size_t jobs = 1;
  std::string out;
  std::string format;
  std::uint64_t guard = kDefaultDenseGuard;
  // decompose
  std::string kind = "both";
  std::string profile;
  bool nested = false;
  // sweeps
  std::string n_range;
  std::string d_list = "4,6,8,10,12,14";
  std::optional<std::size_t> skip_cp_above;
  // eigenvalues
  std::string backend = "tt";
  std::size_t max_iter = 10'000;
  double tol = 1e-10;
  bool allow_odd = false;
  std::string init = "uniform";
  std::string history;
  // verify
  std::string tt_file;
  std::size_t vectors = 3;
};

struct VerifyFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// parsing helpers

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\n' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::size_t parse_size(const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty() || s.front() == '-') throw Error(Errc::bad_value, "expected a nonnegative integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

/// "a..b" or a comma list.
std::vector<std::size_t> parse_int_list(const std::string& text) {
  std::vector<std::size_t> out;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t a = parse_size(text.substr(0, dots)), b = parse_size(text.substr(dots + 2));
    if (a > b) throw Error(Errc::bad_value, "empty range '" + text + "'");
    for (std::size_t v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  for (const auto& t : split_tokens(text)) out.push_back(parse_size(t));
  if (out.empty()) throw Error(Errc::bad_value, "empty list '" + text + "'");
  return out;
}

Lattice make_lattice(const std::string& sel) {
  if (sel == "divisor") return Lattice::divisor();
  if (sel == "max") return Lattice::max_chain();
  if (sel.rfind("explicit:", 0) == 0) return Lattice::from_poset(load_poset(sel.substr(9)));
  throw Error(Errc::bad_value, "unknown lattice '" + sel + "' (expected divisor, max or explicit:<path>)");
}

OrderedSubset make_set(const Lattice& L, const RunSpec& s) {
  const int given = (s.range ? 1 : 0) + (s.list.empty() ? 0 : 1) + (s.set_file.empty() ? 0 : 1);
  if (given != 1) throw Error(Errc::bad_value, "give exactly one of --range, --list, --set-file");
  if (s.range) return range_subset(L, *s.range);
  std::string text = s.list;
  if (!s.set_file.empty()) {
    std::ifstream in(s.set_file);
    if (!in) throw Error(Errc::parse_error, "cannot open set file '" + s.set_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  std::vector<Element> elems;
  for (const auto& t : split_tokens(text)) elems.push_back(L.element(t));
  if (elems.empty()) throw Error(Errc::bad_value, "the set is empty");
  return linear_extension(L, std::move(elems));
}

Mode resolve_mode(const RunSpec& s, const Valuation& f) { return s.mode.empty() ? f.default_mode() : parse_mode(s.mode); }

/// Calls fn.template operator()<T>() with T picked by the mode.
template <class F>
decltype(auto) with_mode(Mode m, F&& fn) {
  if (m == Mode::exact) return fn.template operator()<mpq_class>();
  return fn.template operator()<double>();
}

// ---------------------------------------------------------------------------
// output

Json spec_json(const RunSpec& s) {
  Json j;
  j["command"] = s.command;
  j["lattice"] = s.lattice;
  const bool sweep = s.command == "storage-sweep" || s.command == "eig-sweep";
  if (sweep) {
    j["n_range"] = s.n_range;
    j["d_list"] = s.d_list;
  } else {
    if (s.range) j["range"] = *s.range;
    if (!s.list.empty()) j["list"] = s.list;
    if (!s.set_file.empty()) j["set_file"] = s.set_file;
    j["d"] = s.d;
  }
  j["f"] = s.f;
  j["mode"] = s.mode.empty() ? "default" : s.mode;
  j["seed"] = s.seed;
  j["guard"] = s.guard;
  if (s.command == "decompose") {
    j["kind"] = s.kind;
    j["nested"] = s.nested;
  }
  if (s.command == "storage-sweep") j["skip_cp_above"] = s.skip_cp_above ? Json(*s.skip_cp_above) : Json(nullptr);
  if (s.command == "eig" || s.command == "eig-sweep") {
    j["backend"] = s.backend;
    j["max_iter"] = s.max_iter;
    j["tol"] = s.tol;
    j["init"] = s.init;
    j["allow_odd"] = s.allow_odd;
  }
  if (s.command == "verify") {
    j["vectors"] = s.vectors;
    if (!s.tt_file.empty()) j["tt_file"] = s.tt_file;
  }
  return j;
}

Json header_json(const RunSpec& s, const char* schema, Mode mode) {
  Json j;
  j["schema"] = schema;
  j["version"] = version();
  j["mode"] = mode_name(mode);
  j["spec"] = spec_json(s);
  return j;
}

std::string csv_comment(const RunSpec& s, const char* schema, Mode mode) {
  return std::string("# schema=") + schema + " version=" + version() + " mode=" + mode_name(mode) +
         " spec=" + spec_json(s).dump() + "\n";
}

void emit(const RunSpec& s, std::ostream& out, const std::string& text) {
  if (s.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(s.out, std::ios::binary);
  if (!f) throw Error(Errc::bad_value, "cannot write '" + s.out + "'");
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::bad_value, "cannot write '" + path + "'");
  f << text;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

std::string index_text(std::span<const std::size_t> idx) {
  std::string s = "(";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k] + 1);
  return s + ")";
}

template <Scalar T>
std::string value_text(const T& v) {
  return to_string(v);
}

// ---------------------------------------------------------------------------
// decompose

int cmd_decompose(const RunSpec& s, std::ostream& out) {
  const Lattice L = make_lattice(s.lattice);
  const OrderedSubset S = make_set(L, s);
  const Valuation f = Valuation::parse(s.f);
  const Mode mode = resolve_mode(s, f);
  if (s.kind != "cp" && s.kind != "tt" && s.kind != "both")
    throw Error(Errc::bad_value, "unknown --kind '" + s.kind + "' (expected cp, tt or both)");
  const bool want_cp = s.kind != "tt" || !s.profile.empty();
  if (s.d == 0) throw Error(Errc::bad_order, "order must be at least 1");
  {
    // refuse before allocating: E is n x #S^{∨d}, the middle TT-core is
    // #S^{∨h} x n x #S^{∨(d-h-1)}
    const std::size_t h = s.d / 2, hp = s.d - h - 1;
    const JoinClosure closure(S, std::max<std::size_t>(s.d, 1));
    auto over = [&](const char* what, mpz_class size) {
      if (size > static_cast<unsigned long>(s.guard))
        throw Error(Errc::too_large, std::string(what) + " would hold " + size.get_str() + " entries, above the guard " +
                                         std::to_string(s.guard));
    };
    if (want_cp) over("the boolean factor", mpz_class(static_cast<unsigned long>(S.size())) * static_cast<unsigned long>(closure.size(s.d)));
    if (s.kind != "cp" && h >= 1)
      over("the middle core", mpz_class(static_cast<unsigned long>(closure.size(h))) * static_cast<unsigned long>(S.size()) *
                                     static_cast<unsigned long>(hp ? closure.size(hp) : 1));
  }

  Json j = header_json(s, "jointensor-decomposition/1", mode);
  j["lattice"] = L.describe();
  j["f"] = f.describe();
  j["S"] = S.display();
  with_mode(mode, [&]<Scalar T>() {
    if (want_cp) {
      auto cp = build_cp<T>(S, f, s.d);
      if (s.nested) cp = cp.reordered(nested_column_order(S, s.d));
      if (s.kind != "tt") {
        j["cp"] = to_json(cp);
        j["cp"]["column_order"] = s.nested ? "nested" : "linear_extension";
        j["cp"]["storage"] = nnz_report(cp).count.get_str();
      }
      if (!s.profile.empty()) {
        std::string csv = csv_comment(s, "jointensor-profile/1", mode) + "element";
        for (const Element& y : cp.terms()) csv += "," + csv_escape(L.display(y));
        csv += "\n";
        for (std::size_t i = 0; i < cp.n(); ++i) {
          csv += csv_escape(L.display(S[i]));
          for (std::size_t k = 0; k < cp.r(); ++k) csv += cp.factor()(i, k) ? ",1" : ",0";
          csv += "\n";
        }
        write_file(s.profile, csv);
      }
    }
    if (s.kind != "cp") {
      const auto tt = build_tt<T>(S, f, s.d);
      j["tt"] = to_json(tt);
      j["tt"]["storage"] = nnz_report(tt).count.get_str();
    }
  });
  emit(s, out, j.dump(2) + "\n");
  return ok;
}

// ---------------------------------------------------------------------------
// storage sweep

struct StorageRow {
  std::size_t n, d;
  std::string representation;
  std::string count;
  std::string status;
};

int cmd_storage_sweep(const RunSpec& s, std::ostream& out) {
  const Lattice L = make_lattice(s.lattice);
  const Valuation f = Valuation::parse(s.f);
  const Mode mode = resolve_mode(s, f);
  const auto ns = parse_int_list(s.n_range.empty() ? "2..20" : s.n_range);
  const auto ds = parse_int_list(s.d_list);
  struct Cell {
    std::size_t n, d;
    std::vector<StorageRow> rows;
  };
  std::vector<Cell> cells;
  for (std::size_t n : ns)
    for (std::size_t d : ds) cells.push_back({n, d, {}});

  const auto count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(std::max<std::size_t>(1, s.jobs)))
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    Cell& cell = cells[static_cast<std::size_t>(c)];
    auto fail = [&](const std::string& rep, const std::string& why) {
      cell.rows.push_back({cell.n, cell.d, rep, "", why});
    };
    auto guarded = [&](const std::string& rep, auto&& body) {
      try {
        body();
      } catch (const Error& e) {
        fail(rep, std::string("error:") + errc_name(e.code()));
      } catch (const std::exception& e) {
        fail(rep, "error:internal");
      }
    };
    std::optional<OrderedSubset> S;
    guarded("cp", [&] { S = range_subset(L, cell.n); });
    if (!S) {
      cell.rows.push_back({cell.n, cell.d, "sym", symmetric_part_count(cell.n, cell.d).get_str(), "ok"});
      cell.rows.push_back({cell.n, cell.d, "tt", "", cell.rows.front().status});
      continue;
    }
    guarded("cp", [&] {
      const JoinClosure closure(*S, cell.d);
      if (s.skip_cp_above && closure.elements().size() > *s.skip_cp_above) {
        cell.rows.push_back({cell.n, cell.d, "cp", "", "skipped"});
        return;
      }
      with_mode(mode, [&]<Scalar T>() {
        cell.rows.push_back({cell.n, cell.d, "cp", nnz_report(build_cp<T>(*S, f, cell.d)).count.get_str(), "ok"});
      });
    });
    cell.rows.push_back({cell.n, cell.d, "sym", symmetric_part_count(cell.n, cell.d).get_str(), "ok"});
    guarded("tt", [&] {
      with_mode(mode, [&]<Scalar T>() {
        cell.rows.push_back({cell.n, cell.d, "tt", count_tt_storage<T>(*S, f, cell.d, Exec::serial).count.get_str(), "ok"});
      });
    });
  }

  std::vector<StorageRow> rows;
  for (auto& cell : cells) {
    std::sort(cell.rows.begin(), cell.rows.end(),
              [](const StorageRow& a, const StorageRow& b) { return a.representation < b.representation; });
    rows.insert(rows.end(), cell.rows.begin(), cell.rows.end());
  }
  std::stable_sort(rows.begin(), rows.end(), [](const StorageRow& a, const StorageRow& b) {
    return std::tie(a.n, a.d) < std::tie(b.n, b.d);
  });

  if (s.format == "json") {
    Json j = header_json(s, "jointensor-storage-sweep/1", mode);
    j["lattice"] = L.describe();
    j["f"] = f.describe();
    Json arr = Json::array();
    for (const auto& r : rows)
      arr.push_back({{"n", r.n}, {"d", r.d}, {"representation", r.representation},
                     {"count", r.count.empty() ? Json(nullptr) : Json(r.count)}, {"status", r.status}});
    j["rows"] = std::move(arr);
    emit(s, out, j.dump(2) + "\n");
  } else {
    std::string csv = csv_comment(s, "jointensor-storage-sweep/1", mode) + "n,d,representation,count,status\n";
    for (const auto& r : rows)
      csv += std::to_string(r.n) + "," + std::to_string(r.d) + "," + r.representation + "," + r.count + "," + r.status + "\n";
    emit(s, out, csv);
  }
  return ok;
}

// ---------------------------------------------------------------------------
// eigenvalues

PowerConfig power_config(const RunSpec& s) {
  PowerConfig cfg;
  cfg.tolerance = s.tol;
  cfg.max_iterations = s.max_iter;
  cfg.allow_odd_order = s.allow_odd;
  if (s.init == "uniform")
    cfg.initial = InitialVector::uniform();
  else if (s.init == "random")
    cfg.initial = InitialVector::random(s.seed);
  else if (s.init.rfind("given:", 0) == 0) {
    std::vector<double> v;
    for (const auto& t : split_tokens(s.init.substr(6))) v.push_back(Number::parse(t).approx);
    cfg.initial = InitialVector::given(std::move(v));
  } else {
    throw Error(Errc::bad_value, "unknown --init '" + s.init + "' (expected uniform, random or given:v1,v2,...)");
  }
  return cfg;
}

struct EigenCell {
  EigenEstimate est;
  GerschgorinRegion region;
  BoundCheck check;
};

EigenCell eigen_cell(const RunSpec& s, const OrderedSubset& S, const Valuation& f, std::size_t d, Mode mode) {
  EigenCell cell;
  const auto C = make_contractor<double>(parse_backend(s.backend), S, f, d, s.guard, Exec::serial);
  cell.est = power_method(*C, power_config(s));
  cell.region = with_mode(mode, [&]<Scalar T>() { return gerschgorin_bound<T>(S, f, d); });
  cell.check = bound_check(cell.est, cell.region, s.tol);
  return cell;
}

int cmd_eig(const RunSpec& s, std::ostream& out) {
  const Lattice L = make_lattice(s.lattice);
  const OrderedSubset S = make_set(L, s);
  const Valuation f = Valuation::parse(s.f);
  const Mode mode = resolve_mode(s, f);
  const EigenCell cell = eigen_cell(s, S, f, s.d, mode);
  Json j = header_json(s, "jointensor-eigen/1", mode);
  j["n"] = S.size();
  j["d"] = s.d;
  j["lattice"] = L.describe();
  j["f"] = f.describe();
  j["lambda_lower"] = cell.est.lambda_lower;
  j["lambda_upper"] = cell.est.lambda_upper;
  j["lambda"] = cell.est.lambda;
  j["iterations"] = cell.est.iterations;
  j["converged"] = cell.est.converged;
  j["bound_real_upper"] = cell.region.real_upper;
  j["ratio"] = cell.check.ratio;
  j["bound_ok"] = cell.check.ok;
  j["x"] = cell.est.x;
  j["clamped_steps"] = cell.est.clamped;
  j["warnings"] = cell.est.warnings;
  j["gerschgorin"] = to_json(cell.region);
  if (!s.history.empty()) {
    std::string csv = csv_comment(s, "jointensor-eigen-history/1", mode) + "iter,lower,upper\n";
    for (std::size_t k = 0; k < cell.est.history.size(); ++k)
      csv += std::to_string(k + 1) + "," + to_string(cell.est.history[k].lower) + "," +
             to_string(cell.est.history[k].upper) + "\n";
    write_file(s.history, csv);
  }
  emit(s, out, j.dump(2) + "\n");
  if (!cell.check.ok) throw VerifyFailed("upper bracket " + to_string(cell.est.lambda_upper) +
                                         " exceeds the Gerschgorin bound " + to_string(cell.region.real_upper));
  return ok;
}

int cmd_eig_sweep(const RunSpec& s, std::ostream& out) {
  const Lattice L = make_lattice(s.lattice);
  const Valuation f = Valuation::parse(s.f);
  const Mode mode = resolve_mode(s, f);
  const auto ns = parse_int_list(s.n_range.empty() ? "1..10" : s.n_range);
  const auto ds = parse_int_list(s.d_list);
  struct Cell {
    std::size_t n, d;
    std::optional<EigenCell> result;
    std::string status = "ok";
  };
  std::vector<Cell> cells;
  for (std::size_t n : ns)
    for (std::size_t d : ds) cells.push_back({n, d, std::nullopt});

  const auto count = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(std::max<std::size_t>(1, s.jobs)))
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    Cell& cell = cells[static_cast<std::size_t>(c)];
    try {
      cell.result = eigen_cell(s, range_subset(L, cell.n), f, cell.d, mode);
    } catch (const Error& e) {
      cell.status = std::string("error:") + errc_name(e.code());
    } catch (const std::exception&) {
      cell.status = "error:internal";
    }
  }

  for (const Cell& c : cells)
    if (c.result && !c.result->check.ok)
      throw VerifyFailed("bound violated at n=" + std::to_string(c.n) + ", d=" + std::to_string(c.d) + ": upper bracket " +
                         to_string(c.result->est.lambda_upper) + " > bound " + to_string(c.result->region.real_upper));

  if (s.format == "json") {
    Json j = header_json(s, "jointensor-eig-sweep/1", mode);
    j["lattice"] = L.describe();
    j["f"] = f.describe();
    Json arr = Json::array();
    for (const Cell& c : cells) {
      Json r{{"n", c.n}, {"d", c.d}, {"status", c.status}};
      if (c.result) {
        r["lambda_lower"] = c.result->est.lambda_lower;
        r["lambda_upper"] = c.result->est.lambda_upper;
        r["lambda"] = c.result->est.lambda;
        r["bound"] = c.result->region.real_upper;
        r["ratio"] = c.result->check.ratio;
        r["iterations"] = c.result->est.iterations;
        r["converged"] = c.result->est.converged;
      }
      arr.push_back(std::move(r));
    }
    j["rows"] = std::move(arr);
    emit(s, out, j.dump(2) + "\n");
  } else {
    std::string csv = csv_comment(s, "jointensor-eig-sweep/1", mode) +
                      "n,d,lambda_lower,lambda_upper,lambda,bound,ratio,iterations,converged,status\n";
    for (const Cell& c : cells) {
      csv += std::to_string(c.n) + "," + std::to_string(c.d) + ",";
      if (c.result) {
        const auto& e = c.result->est;
        csv += to_string(e.lambda_lower) + "," + to_string(e.lambda_upper) + "," + to_string(e.lambda) + "," +
               to_string(c.result->region.real_upper) + "," + to_string(c.result->check.ratio) + "," +
               std::to_string(e.iterations) + "," + (e.converged ? "true" : "false") + ",";
      } else {
        csv += ",,,,,,,";
      }
      csv += c.status + "\n";
    }
    emit(s, out, csv);
  }
  return ok;
}

// ---------------------------------------------------------------------------
// rank

bool is_lcm_family(const RunSpec& s, const Lattice& L, const OrderedSubset& S, const Valuation& f) {
  if (L.kind() != LatticeKind::divisor || f.kind() != ValuationKind::identity || f.describe() != "identity") return false;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (S[i].key != static_cast<long>(i + 1)) return false;
  return s.d >= 3;
}

int cmd_rank(const RunSpec& s, std::ostream& out) {
  const Lattice L = make_lattice(s.lattice);
  const OrderedSubset S = make_set(L, s);
  const Valuation f = Valuation::parse(s.f);
  const Mode mode = resolve_mode(s, f);
  RankBoundReport rep = rank_bounds(S, f, s.d, mode);

  bool guard_hit = false;
  Json numeric = nullptr;
  try {
    checked_power(S.size(), s.d, s.guard);
  } catch (const Error&) {
    guard_hit = true;
  }
  if (!guard_hit) {
    if (mode == Mode::exact) {
      attach_exact_ranks(rep, materialize_dense<mpq_class>(S, f, s.d, s.guard), s.guard);
    } else {
      const auto A = materialize_dense<double>(S, f, s.d, s.guard);
      Json per = Json::array();
      std::size_t best = 0;
      for (std::size_t k = 1; k < s.d; ++k) {
        const NumericRank nr = numeric_rank(unfolding(A, k, s.guard));
        per.push_back({{"k", k}, {"rank", nr.rank}, {"tolerance", nr.tolerance}, {"sigma_max", nr.sigma_max}});
        rep.exact_rank_per_k.push_back(nr.rank);
        best = std::max(best, nr.rank);
      }
      rep.tt_rank = best;
      numeric = {{"policy", "max(rows, cols) * eps * sigma_max"}, {"per_k", std::move(per)}};
    }
  }

  Json j = header_json(s, "jointensor-rank/1", mode);
  Json body = to_json(rep);
  j["n"] = rep.n;
  j["d"] = rep.d;
  j["lattice"] = L.describe();
  j["f"] = f.describe();
  for (auto it = body.begin(); it != body.end(); ++it)
    if (it.key() != "n" && it.key() != "d") j[it.key()] = it.value();
  j["verified"] = guard_hit ? "none" : (mode == Mode::exact ? "exact" : "numeric");
  j["guard_exceeded"] = guard_hit;
  if (!numeric.is_null()) j["numeric_rank"] = std::move(numeric);
  j["lcm_tt_rank_reference"] = is_lcm_family(s, L, S, f) ? Json(lcm_tt_rank_reference(S.size(), s.d)) : Json(nullptr);
  emit(s, out, j.dump(2) + "\n");
  return ok;
}

// ---------------------------------------------------------------------------
// verify

struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

template <Scalar T>
bool same_value(const T& a, const T& b) {
  if constexpr (std::same_as<T, mpq_class>)
    return a == b;
  else
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

template <Scalar T>
std::vector<CheckLine> verify_all(const RunSpec& s, const OrderedSubset& S, const Valuation& f) {
  std::vector<CheckLine> lines;
  const std::size_t n = S.size(), d = s.d;
  const DenseTensor<T> A = materialize_dense<T>(S, f, d, s.guard);
  const auto cp = build_cp<T>(S, f, d);
  const TensorTrain<T> tt = s.tt_file.empty() ? build_tt<T>(S, f, d) : [&] {
    std::ifstream in(s.tt_file);
    if (!in) throw Error(Errc::parse_error, "cannot open tensor train file '" + s.tt_file + "'");
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw Error(Errc::parse_error, std::string("tensor train file: ") + e.what());
    }
    if (j.contains("tt")) j = j.at("tt");
    auto loaded = tt_from_json<T>(j);
    if (loaded.n() != n || loaded.d() != d)
      throw Error(Errc::bad_shape, "tensor train file has n=" + std::to_string(loaded.n()) + ", d=" +
                                       std::to_string(loaded.d()) + " but the command line asks for n=" + std::to_string(n) +
                                       ", d=" + std::to_string(d));
    return loaded;
  }();

  auto entrywise = [&](const std::string& name, auto&& eval) {
    std::vector<std::size_t> idx(d, 0);
    std::size_t checked = 0;
    do {
      const T got = eval(idx);
      const T& want = A.at(idx);
      if (!same_value(got, want)) {
        lines.push_back({name, false, "first mismatch at " + index_text(idx) + ": got " + value_text(got) +
                                          ", dense " + value_text(want)});
        return;
      }
      ++checked;
    } while (next_index(idx, n));
    lines.push_back({name, true, std::to_string(checked) + " entries"});
  };
  entrywise("cp_entries", [&](std::span<const std::size_t> i) { return cp.evaluate(i); });
  entrywise("tt_entries", [&](std::span<const std::size_t> i) { return tt.evaluate(i); });

  try {
    const auto P = symmetric_part(A, s.seed);
    std::vector<std::size_t> idx(d, 0);
    bool good = true;
    do {
      if (!same_value(P.recover_entry(idx), A.at(idx))) {
        lines.push_back({"symmetric_part", false, "round trip differs at " + index_text(idx)});
        good = false;
        break;
      }
    } while (next_index(idx, n));
    if (good) {
      const bool count_ok = symmetric_part_count(n, d) == static_cast<unsigned long>(P.size());
      lines.push_back({"symmetric_part", count_ok, std::to_string(P.size()) + " stored values"});
    }
  } catch (const Error& e) {
    lines.push_back({"symmetric_part", false, e.what()});
  }

  const DenseContractor<T> dc(A);
  const CpContractor<T> cc(cp);
  const TtContractor<T> tc(tt);
  std::mt19937_64 rng(s.seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
  bool contraction_ok = true;
  std::string detail = std::to_string(s.vectors) + " seeded vectors";
  for (std::size_t v = 0; v < s.vectors && contraction_ok; ++v) {
    std::vector<T> x(n);
    for (auto& xi : x) {
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      if constexpr (std::same_as<T, mpq_class>)
        xi = q;
      else
        xi = q.get_d();
    }
    const auto y = dc.apply(x);
    for (const Contractor<T>* other : {static_cast<const Contractor<T>*>(&cc), static_cast<const Contractor<T>*>(&tc)}) {
      const auto z = other->apply(x);
      for (std::size_t i = 0; i < n && contraction_ok; ++i)
        if (!same_value(z[i], y[i])) {
          contraction_ok = false;
          detail = std::string(backend_name(other->backend())) + " apply differs from dense at component " +
                   std::to_string(i + 1) + " for vector " + std::to_string(v + 1);
        }
      if (contraction_ok && !same_value(other->quadratic_form(x), dc.quadratic_form(x))) {
        contraction_ok = false;
        detail = std::string(backend_name(other->backend())) + " quadratic form differs from dense for vector " +
                 std::to_string(v + 1);
      }
    }
  }
  lines.push_back({"contractions", contraction_ok, detail});
  return lines;
}

int cmd_verify(const RunSpec& s, std::ostream& out) {
  const Lattice L = make_lattice(s.lattice);
  const OrderedSubset S = make_set(L, s);
  const Valuation f = Valuation::parse(s.f);
  const Mode mode = resolve_mode(s, f);
  const auto lines = with_mode(mode, [&]<Scalar T>() { return verify_all<T>(s, S, f); });
  bool all = true;
  std::ostringstream text;
  if (s.format == "json") {
    Json j = header_json(s, "jointensor-verify/1", mode);
    Json arr = Json::array();
    for (const auto& l : lines) {
      arr.push_back({{"check", l.name}, {"pass", l.pass}, {"detail", l.detail}});
      all = all && l.pass;
    }
    j["checks"] = std::move(arr);
    j["pass"] = all;
    text << j.dump(2) << "\n";
  } else {
    text << csv_comment(s, "jointensor-verify/1", mode);
    for (const auto& l : lines) {
      text << (l.pass ? "pass  " : "FAIL  ") << l.name << std::string(16 - std::min<std::size_t>(15, l.name.size()), ' ')
           << l.detail << "\n";
      all = all && l.pass;
    }
    text << (all ? "pass" : "FAIL") << "\n";
  }
  emit(s, out, text.str());
  return all ? ok : verify_failed;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, RunSpec& s, bool with_set, bool with_order) {
  sub->add_option("--lattice", s.lattice, "divisor | max | explicit:<path>")->capture_default_str();
  if (with_set) {
    sub->add_option("--range", s.range, "S = {1..n} (first n elements for explicit posets)");
    sub->add_option("--list", s.list, "comma separated elements of S");
    sub->add_option("--set-file", s.set_file, "file listing the elements of S");
  }
  sub->add_option("--f", s.f, "identity | constant:v | power:a | reciprocal | table:<path>")->capture_default_str();
  if (with_order) sub->add_option("-d,--order", s.d, "tensor order")->capture_default_str();
  sub->add_option("--mode", s.mode, "exact | float (default from --f)");
  sub->add_option("--seed", s.seed, "seed for sampled checks and random vectors")->capture_default_str();
  sub->add_option("--jobs", s.jobs, "concurrent sweep cells")->capture_default_str();
  sub->add_option("--out", s.out, "output path (default stdout)");
  sub->add_option("--format", s.format, "json | csv");
  sub->add_option("--guard", s.guard, "largest dense tensor, in entries")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunSpec s;
  CLI::App app{"Join tensors over finite join semilattices: polyadic and tensor-train forms, ranks, eigenvalues"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  auto* dec = app.add_subcommand("decompose", "write the polyadic and/or tensor-train form");
  add_common(dec, s, true, true);
  dec->add_option("--kind", s.kind, "cp | tt | both")->capture_default_str();
  dec->add_option("--profile", s.profile, "also write the boolean factor E as a 1/0 CSV grid");
  dec->add_flag("--nested", s.nested, "order the columns of E by first appearance in nested prefixes");

  auto* sweep = app.add_subcommand("storage-sweep", "stored-value counts of sym, tt and cp over an (n, d) grid");
  add_common(sweep, s, false, false);
  sweep->add_option("--n-range", s.n_range, "n values, a..b or a list (default 2..20)");
  sweep->add_option("--d-list", s.d_list, "orders")->capture_default_str();
  sweep->add_option("--skip-cp-above", s.skip_cp_above, "skip cp cells with more terms than this");

  auto add_power = [&](CLI::App* sub) {
    sub->add_option("--backend", s.backend, "dense | cp | tt")->capture_default_str();
    sub->add_option("--max-iter", s.max_iter, "iteration cap")->capture_default_str();
    sub->add_option("--tol", s.tol, "bracket width at which to stop")->capture_default_str();
    sub->add_option("--init", s.init, "uniform | random | given:v1,v2,...")->capture_default_str();
    sub->add_flag("--allow-odd", s.allow_odd, "run odd orders (outside the convergence theory)");
  };
  auto* eig = app.add_subcommand("eig", "dominant eigenvalue bracket and Gerschgorin bound");
  add_common(eig, s, true, true);
  add_power(eig);
  eig->add_option("--history", s.history, "write the bracket history as CSV");

  auto* esweep = app.add_subcommand("eig-sweep", "eigenvalue brackets and bounds over an (n, d) grid");
  add_common(esweep, s, false, false);
  add_power(esweep);
  esweep->add_option("--n-range", s.n_range, "n values, a..b or a list (default 1..10)");
  esweep->add_option("--d-list", s.d_list, "orders")->capture_default_str();

  auto* rank = app.add_subcommand("rank", "rank bounds and exact unfolding ranks");
  add_common(rank, s, true, true);

  auto* ver = app.add_subcommand("verify", "check cp, tt, symmetric part and contractions against the dense tensor");
  add_common(ver, s, true, true);
  ver->add_option("--tt-file", s.tt_file, "check this tensor train file instead of a freshly built one");
  ver->add_option("--vectors", s.vectors, "random vectors for the contraction check")->capture_default_str();

  auto report = [&](const char* code, const std::string& message) {
    Json j{{"error", code}, {"message", message}};
    err << j.dump() << "\n";
  };
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report("bad_arguments", e.what());
    return bad_spec;
  }

  try {
    if (dec->parsed()) s.command = "decompose";
    if (sweep->parsed()) s.command = "storage-sweep";
    if (eig->parsed()) s.command = "eig";
    if (esweep->parsed()) s.command = "eig-sweep";
    if (rank->parsed()) s.command = "rank";
    if (ver->parsed()) s.command = "verify";
    if (!s.format.empty() && s.format != "json" && s.format != "csv")
      throw Error(Errc::bad_value, "unknown --format '" + s.format + "' (expected json or csv)");
    if (s.command == "decompose") return cmd_decompose(s, out);
    if (s.command == "storage-sweep") return cmd_storage_sweep(s, out);
    if (s.command == "eig") return cmd_eig(s, out);
    if (s.command == "eig-sweep") return cmd_eig_sweep(s, out);
    if (s.command == "rank") return cmd_rank(s, out);
    return cmd_verify(s, out);
  } catch (const VerifyFailed& e) {
    report("verification_failed", e.what());
    return verify_failed;
  } catch (const Error& e) {
    report(errc_name(e.code()), e.what());
    return e.code() == Errc::too_large ? guard_exceeded : bad_spec;
  } catch (const std::exception& e) {
    report("internal", e.what());
    return bad_spec;
  }
}

}  // namespace jointensor::cli
