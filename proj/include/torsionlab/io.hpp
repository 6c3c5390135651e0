#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "torsionlab/spectral.hpp"

namespace torsionlab::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Throws Error(Structural) if `j` carries a schema_version other than ours.
void check_version(const json& j);

/// {"order": n, "cayley": [[...]]} | {"perm_generators": [[...]]} | {"cyclic": n} | {"dihedral": n} | {"symmetric": k}
GroupPtr group_from_json(const json& j);
json group_to_json(const FiniteGroup& g);

/// Rows of entries; an entry is a number or [re, im].
Mat matrix_from_json(const json& j, Eigen::Index rows = -1, Eigen::Index cols = -1);
json matrix_to_json(const Mat& m);
json complex_to_json(cplx z);

/// {"class_reps": [...], "class_sizes": [...], "values": [[re, im], ...]}
json class_function_to_json(const ClassFunction& f);
ClassFunction class_function_from_json(const GroupPtr& g, const json& j);

/**
 * {"schema_version": 1, "group": {...}, "lo": 0,
 *  "degrees": [{"dim": d, "action": [op per element] | "trivial"}, ...],
 *  "differentials": [matrix per consecutive pair],
 *  "cocycles": [matrix per degree]}   (optional, declares a cohomology metric)
 */
struct ComplexInput {
    GammaComplex complex;
    std::optional<CohomologyMetric> metric;
};
ComplexInput complex_from_json(const json& j);
json complex_to_json(const GammaComplex& c);

/// {"schema_version": 1, "complex": {...}, "levels": [[basis per degree] per level]}
FilteredComplex filtered_from_json(const json& j);
json filtered_to_json(const FilteredComplex& fc, const std::vector<std::vector<Mat>>& levels);

json read_file(const std::string& path);

}  // namespace torsionlab::io
