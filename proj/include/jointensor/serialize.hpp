#pragma once

#include <string>

#include "json.hpp"
#include "jointensor/lattice.hpp"
#include "jointensor/polyadic.hpp"
#include "jointensor/power_method.hpp"
#include "jointensor/rank.hpp"
#include "jointensor/storage.hpp"
#include "jointensor/tensor_train.hpp"

namespace jointensor {

using Json = nlohmann::ordered_json;

const char* version() noexcept;

/// {"elements": [...], "leq": [[a, b], ...], "join": [[a, b, a∨b], ...]?}
/// Element names may be strings or integers. A "join" table replaces the
/// derived joins.
ExplicitPoset parse_poset(const Json& j);
ExplicitPoset load_poset(const std::string& path);

/// Exact values as "p" or "p/q" strings, floats as numbers.
Json scalar_json(const mpq_class& v);
Json scalar_json(double v);
template <Scalar T>
T scalar_from_json(const Json& j);

/// {n, d, r, terms, c, E: {rows, cols, nnz_coords}}; coordinates are 0-based.
template <Scalar T>
Json to_json(const PolyadicDecomposition<T>& cp);

/// {n, d, ranks, cores: [{k, shape, triplets, values?}]}; triplets are 0-based
/// (row, mode, col) and only the stored cores are written.
template <Scalar T>
Json to_json(const TensorTrain<T>& tt);

/// Inverse of to_json(TensorTrain); Error(bad_shape) when the cores do not fit.
template <Scalar T>
TensorTrain<T> tt_from_json(const Json& j);

Json to_json(const StorageReport& rep);
Json to_json(const RankBoundReport& rep);
Json to_json(const GerschgorinRegion& region);

}  // namespace jointensor
