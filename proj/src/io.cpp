#include "torsionlab/io.hpp"

#include <fstream>

#include "torsionlab/error.hpp"

namespace torsionlab::io {

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Structural, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

cplx entry(const json& e)
{
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) return {e[0].get<double>(), e[1].get<double>()};
    fail(ErrorKind::Structural, "matrix entry must be a number or [re, im]");
}

}  // namespace

void check_version(const json& j)
{
    if (j.is_object() && j.contains("schema_version") && j["schema_version"] != kSchemaVersion)
        fail(ErrorKind::Structural, "unsupported schema_version " + j["schema_version"].dump());
}

GroupPtr group_from_json(const json& j)
{
    try {
        if (j.contains("cyclic")) return FiniteGroup::cyclic(j["cyclic"].get<int>());
        if (j.contains("dihedral")) return FiniteGroup::dihedral(j["dihedral"].get<int>());
        if (j.contains("symmetric")) return FiniteGroup::symmetric(j["symmetric"].get<int>());
        const std::string name = j.value("name", "");
        if (j.contains("cayley")) {
            auto table = j["cayley"].get<std::vector<std::vector<int>>>();
            if (j.contains("order") && j["order"].get<size_t>() != table.size())
                fail(ErrorKind::Structural, "group: order does not match the Cayley table");
            return FiniteGroup::from_cayley(std::move(table), name);
        }
        if (j.contains("perm_generators"))
            return FiniteGroup::from_permutations(j["perm_generators"].get<std::vector<std::vector<int>>>(), name);
    } catch (const json::exception& e) {
        fail(ErrorKind::Structural, std::string("group: ") + e.what());
    }
    fail(ErrorKind::Structural, "group: expected cayley, perm_generators, cyclic, dihedral or symmetric");
}

json group_to_json(const FiniteGroup& g)
{
    json t = json::array();
    for (int a = 0; a < g.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
        t.push_back(row);
    }
    json j;
    if (!g.name().empty()) j["name"] = g.name();
    j["order"] = g.order();
    j["cayley"] = t;
    return j;
}

Mat matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols)
{
    if (!j.is_array()) fail(ErrorKind::Structural, "matrix must be an array of rows");
    const auto r = static_cast<Eigen::Index>(j.size());
    const Eigen::Index c = r ? static_cast<Eigen::Index>(j[0].size()) : std::max<Eigen::Index>(cols, 0);
    if (rows >= 0 && r != rows) fail(ErrorKind::Structural, "matrix has " + std::to_string(r) + " rows, expected " + std::to_string(rows));
    if (cols >= 0 && r && c != cols) fail(ErrorKind::Structural, "matrix has " + std::to_string(c) + " columns, expected " + std::to_string(cols));
    Mat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != c) fail(ErrorKind::Structural, "ragged matrix");
        for (Eigen::Index k = 0; k < c; ++k) m(i, k) = entry(j[i][k]);
    }
    return m;
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Mat& m)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        out.push_back(row);
    }
    return out;
}

json class_function_to_json(const ClassFunction& f)
{
    json reps = json::array(), sizes = json::array(), values = json::array();
    const auto& cls = f.group()->classes();
    for (size_t c = 0; c < cls.size(); ++c) {
        reps.push_back(cls[c].front());
        sizes.push_back(cls[c].size());
        values.push_back(complex_to_json(f.on_class(static_cast<int>(c))));
    }
    json j;
    j["class_reps"] = reps;
    j["class_sizes"] = sizes;
    j["values"] = values;
    return j;
}

ClassFunction class_function_from_json(const GroupPtr& g, const json& j)
{
    const json& values = field(j, "values");
    if (!values.is_array() || static_cast<int>(values.size()) != g->class_count())
        fail(ErrorKind::Structural, "class function needs one value per conjugacy class");
    Vec v(g->class_count());
    for (int c = 0; c < g->class_count(); ++c) v(c) = entry(values[c]);
    if (j.contains("class_reps")) {
        // reorder if the classes were listed by other representatives
        const auto reps = j["class_reps"].get<std::vector<int>>();
        if (static_cast<int>(reps.size()) != g->class_count()) fail(ErrorKind::Structural, "class_reps has the wrong length");
        Vec w(g->class_count());
        std::vector<bool> seen(g->class_count(), false);
        for (int c = 0; c < g->class_count(); ++c) {
            if (reps[c] < 0 || reps[c] >= g->order()) fail(ErrorKind::Structural, "class representative out of range");
            const int k = g->class_of(reps[c]);
            if (seen[k]) fail(ErrorKind::Structural, "two representatives of the same class");
            seen[k] = true;
            w(k) = v(c);
        }
        v = w;
    }
    return ClassFunction(g, v);
}

ComplexInput complex_from_json(const json& j)
{
    check_version(j);
    const GroupPtr g = group_from_json(field(j, "group"));
    const int lo = j.value("lo", 0);
    const json& degrees = field(j, "degrees");
    if (!degrees.is_array() || degrees.empty()) fail(ErrorKind::Structural, "complex needs a nonempty degrees array");
    std::vector<UnitaryRep> spaces;
    for (const auto& d : degrees) {
        const int dim = field(d, "dim").get<int>();
        if (dim < 0) fail(ErrorKind::Structural, "negative dimension");
        if (!d.contains("action") || d["action"] == "trivial") {
            spaces.push_back(UnitaryRep::trivial(g, dim));
            continue;
        }
        const json& act = d["action"];
        if (!act.is_array() || static_cast<int>(act.size()) != g->order())
            fail(ErrorKind::Structural, "action needs one operator per group element");
        std::vector<Mat> ops;
        for (const auto& op : act) ops.push_back(matrix_from_json(op, dim, dim));
        try {
            spaces.push_back(UnitaryRep(g, std::move(ops)));
        } catch (const Error& e) {
            fail(ErrorKind::Structural, std::string("degree action: ") + e.what());
        }
    }
    const json& diffs = field(j, "differentials");
    if (!diffs.is_array() || diffs.size() + 1 != degrees.size())
        fail(ErrorKind::Structural, "complex needs one differential per consecutive pair of degrees");
    std::vector<Mat> d;
    for (size_t i = 0; i < diffs.size(); ++i) d.push_back(matrix_from_json(diffs[i], spaces[i + 1].dim(), spaces[i].dim()));
    ComplexInput out{GammaComplex(lo, std::move(spaces), std::move(d)), std::nullopt};
    if (j.contains("cocycles")) {
        const json& cz = j["cocycles"];
        if (!cz.is_array() || cz.size() != degrees.size()) fail(ErrorKind::Structural, "cocycles needs one matrix per degree");
        std::vector<Mat> z;
        for (size_t i = 0; i < cz.size(); ++i) {
            const int n = lo + static_cast<int>(i);
            z.push_back(cz[i].empty() ? Mat(out.complex.dim(n), 0) : matrix_from_json(cz[i], out.complex.dim(n)));
        }
        out.metric = CohomologyMetric::from_cocycles(out.complex, z);
    }
    return out;
}

json complex_to_json(const GammaComplex& c)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["group"] = group_to_json(*c.group());
    j["lo"] = c.lo();
    json degrees = json::array(), diffs = json::array();
    for (int n = c.lo(); n <= c.hi(); ++n) {
        json d;
        d["dim"] = c.dim(n);
        json act = json::array();
        for (const Mat& op : c.space(n).ops()) act.push_back(matrix_to_json(op));
        d["action"] = act;
        degrees.push_back(d);
        if (n < c.hi()) diffs.push_back(matrix_to_json(c.differential(n)));
    }
    j["degrees"] = degrees;
    j["differentials"] = diffs;
    return j;
}

FilteredComplex filtered_from_json(const json& j)
{
    check_version(j);
    const ComplexInput in = complex_from_json(field(j, "complex"));
    const GammaComplex& c = in.complex;
    const json& lv = field(j, "levels");
    if (!lv.is_array() || lv.empty()) fail(ErrorKind::Structural, "filtration needs a nonempty levels array");
    std::vector<std::vector<Mat>> levels;
    for (const auto& level : lv) {
        if (!level.is_array() || static_cast<int>(level.size()) != c.size())
            fail(ErrorKind::Structural, "every filtration level needs one basis per degree");
        std::vector<Mat> per;
        for (int i = 0; i < c.size(); ++i) {
            const int n = c.lo() + i;
            per.push_back(level[i].empty() ? Mat(c.dim(n), 0) : matrix_from_json(level[i], c.dim(n)));
        }
        levels.push_back(std::move(per));
    }
    return FilteredComplex(c, std::move(levels));
}

json filtered_to_json(const FilteredComplex& fc, const std::vector<std::vector<Mat>>& levels)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["complex"] = complex_to_json(fc.complex());
    json lv = json::array();
    for (const auto& level : levels) {
        json per = json::array();
        for (const Mat& m : level) per.push_back(matrix_to_json(m));
        lv.push_back(per);
    }
    j["levels"] = lv;
    return j;
}

json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Structural, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Structural, std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

}  // namespace torsionlab::io
