#include "jointensor/serialize.hpp"

#include <fstream>
#include <sstream>

#include "jointensor/error.hpp"

namespace jointensor {

const char* version() noexcept { return JOINTENSOR_VERSION; }

namespace {

std::string name_of(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(Errc::parse_error, "poset element names must be strings or integers, got " + v.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse_error, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw Error(Errc::parse_error, std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace

ExplicitPoset parse_poset(const Json& j) {
  const Json& elems = field(j, "elements");
  if (!elems.is_array()) throw Error(Errc::parse_error, "'elements' must be an array");
  std::vector<std::string> names;
  for (const Json& e : elems) names.push_back(name_of(e));
  ExplicitPoset::Relation rel;
  if (j.contains("leq")) {
    for (const Json& p : j.at("leq")) {
      if (!p.is_array() || p.size() != 2) throw Error(Errc::parse_error, "'leq' entries must be pairs, got " + p.dump());
      rel.emplace_back(name_of(p[0]), name_of(p[1]));
    }
  }
  ExplicitPoset poset = ExplicitPoset::from_relation(std::move(names), rel);
  if (j.contains("join")) {
    ExplicitPoset::JoinTriples table;
    for (const Json& t : j.at("join")) {
      if (!t.is_array() || t.size() != 3) throw Error(Errc::parse_error, "'join' entries must be triples, got " + t.dump());
      table.emplace_back(name_of(t[0]), name_of(t[1]), name_of(t[2]));
    }
    poset = poset.with_join_table(table);
  }
  return poset;
}

ExplicitPoset load_poset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open poset file '" + path + "'");
  try {
    return parse_poset(Json::parse(in));
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, "poset file '" + path + "': " + e.what());
  }
}

Json scalar_json(const mpq_class& v) { return to_string(v); }
Json scalar_json(double v) {
  if (!std::isfinite(v)) return to_string(v);
  return v;
}

template <>
mpq_class scalar_from_json<mpq_class>(const Json& j) {
  mpq_class q;
  if (j.is_string() && parse_rational(j.get<std::string>(), q)) return q;
  if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long long>())));
  throw Error(Errc::parse_error, "expected an exact value, got " + j.dump());
}

template <>
double scalar_from_json<double>(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return Number::parse(j.get<std::string>()).approx;
  throw Error(Errc::parse_error, "expected a number, got " + j.dump());
}

template <Scalar T>
Json to_json(const PolyadicDecomposition<T>& cp) {
  Json j;
  j["n"] = cp.n();
  j["d"] = cp.d();
  j["r"] = cp.r();
  Json terms = Json::array(), c = Json::array(), coords = Json::array();
  for (const Element& y : cp.terms()) terms.push_back(cp.base().lattice().display(y));
  for (const T& v : cp.coefficients()) c.push_back(scalar_json(v));
  const IncidenceMatrix& E = cp.factor();
  for (std::size_t i = 0; i < E.rows(); ++i)
    for (std::size_t k = 0; k < E.cols(); ++k)
      if (E(i, k)) coords.push_back({i, k});
  j["terms"] = std::move(terms);
  j["c"] = std::move(c);
  j["E"] = {{"rows", E.rows()}, {"cols", E.cols()}, {"nnz", coords.size()}, {"nnz_coords", std::move(coords)}};
  return j;
}

template <Scalar T>
Json to_json(const TensorTrain<T>& tt) {
  Json j;
  j["n"] = tt.n();
  j["d"] = tt.d();
  j["ranks"] = std::vector<std::size_t>(tt.ranks().begin(), tt.ranks().end());
  Json cores = Json::array();
  for (std::size_t k = 1; k <= tt.stored_count(); ++k) {
    const SparseCore<T>& g = tt.stored_core(k);
    Json core;
    core["k"] = k;
    core["shape"] = {g.rows(), g.modes(), g.cols()};
    Json trip = Json::array();
    for (const CoreEntry& e : g.entries()) trip.push_back({e.row, e.mode, e.col});
    core["triplets"] = std::move(trip);
    if (!g.is_boolean()) {
      Json vals = Json::array();
      for (const T& v : g.values()) vals.push_back(scalar_json(v));
      core["values"] = std::move(vals);
    }
    cores.push_back(std::move(core));
  }
  j["cores"] = std::move(cores);
  return j;
}

template <Scalar T>
TensorTrain<T> tt_from_json(const Json& j) {
  try {
    const std::size_t n = size_field(j, "n"), d = size_field(j, "d");
    std::vector<SparseCore<T>> cores;
    for (const Json& c : field(j, "cores")) {
      const Json& shape = field(c, "shape");
      if (!shape.is_array() || shape.size() != 3) throw Error(Errc::bad_shape, "core shape must have three entries");
      std::vector<CoreEntry> entries;
      for (const Json& t : field(c, "triplets")) {
        if (!t.is_array() || t.size() != 3) throw Error(Errc::bad_shape, "core triplets must have three entries");
        entries.push_back({t[0].get<std::uint32_t>(), t[1].get<std::uint32_t>(), t[2].get<std::uint32_t>()});
      }
      std::vector<T> values;
      if (c.contains("values"))
        for (const Json& v : c.at("values")) values.push_back(scalar_from_json<T>(v));
      // a valued core with every entry present may legitimately be empty; keep it valued
      cores.emplace_back(shape[0].get<std::size_t>(), shape[1].get<std::size_t>(), shape[2].get<std::size_t>(),
                         std::move(entries), std::move(values));
    }
    return TensorTrain<T>(n, d, std::move(cores));
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, std::string("tensor train file: ") + e.what());
  }
}

Json to_json(const StorageReport& rep) {
  Json j;
  j["representation"] = rep.representation;
  j["n"] = rep.n;
  j["d"] = rep.d;
  j["count"] = rep.count.get_str();
  if (rep.terms) j["r"] = *rep.terms;
  if (!rep.ranks.empty()) j["ranks"] = rep.ranks;
  return j;
}

Json to_json(const RankBoundReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["d"] = rep.d;
  j["half_closure"] = rep.half_closure;
  j["full_closure"] = rep.full_closure;
  j["lower"] = rep.lower;
  j["lower_unclamped"] = rep.lower_raw;
  j["upper"] = rep.upper;
  j["assumption_holds"] = rep.assumption.holds;
  j["assumption_approximate"] = rep.assumption.approximate;
  j["zero_coefficients"] = rep.assumption.zero_terms;
  j["equality_case"] = rep.equality_case;
  j["exact_rank_per_k"] = rep.exact_rank_per_k;
  if (rep.tt_rank)
    j["tt_rank"] = *rep.tt_rank;
  else
    j["tt_rank"] = nullptr;
  return j;
}

Json to_json(const GerschgorinRegion& region) {
  Json disks = Json::array();
  for (const Disk& d : region.disks) disks.push_back({{"center", d.center}, {"radius", d.radius}});
  Json j;
  j["c"] = region.c;
  j["disks"] = std::move(disks);
  j["real_upper"] = region.real_upper;
  j["real_upper_exact"] = region.real_upper_text;
  return j;
}

template Json to_json<mpq_class>(const PolyadicDecomposition<mpq_class>&);
template Json to_json<double>(const PolyadicDecomposition<double>&);
template Json to_json<mpq_class>(const TensorTrain<mpq_class>&);
template Json to_json<double>(const TensorTrain<double>&);
template TensorTrain<mpq_class> tt_from_json<mpq_class>(const Json&);
template TensorTrain<double> tt_from_json<double>(const Json&);

}  // namespace jointensor
