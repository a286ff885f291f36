#include "gdimlab/serialize.hpp"

#include <cstdint>
#include <sstream>
#include <utility>

#include "gdimlab/errors.hpp"

namespace gdimlab {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field: ") + key);
    return *it;
}

template <typename T>
T as(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception&) {
        throw SchemaError(std::string("field has the wrong type: ") + key);
    }
}

void check_header(const json& j, const char* kind) {
    if (!j.is_object()) throw SchemaError("document is not an object");
    if (as<int>(j, "schema") != 1) throw SchemaError("unsupported schema version");
    if (as<std::string>(j, "kind") != kind)
        throw SchemaError(std::string("expected kind \"") + kind + "\"");
}

FVec fvec_from_json(const json& j, const PrimeField& F) {
    FVec v;
    if (!j.is_array()) throw SchemaError("coordinate vector is not an array");
    for (const json& c : j) {
        std::uint32_t x;
        try {
            x = c.get<std::uint32_t>();
        } catch (const json::exception&) {
            throw SchemaError("coordinate is not a nonnegative integer");
        }
        if (x >= F.p()) throw SchemaError("coordinate out of field range");
        v.push_back(x);
    }
    return v;
}

json fmatrix_to_json(const FMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t jj = 0; jj < m.cols(); ++jj) row.push_back(m.at(i, jj));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

FMatrix fmatrix_from_json(const json& j, const PrimeField& F) {
    auto r = as<std::size_t>(j, "rows");
    auto c = as<std::size_t>(j, "cols");
    const json& data = field(j, "data");
    if (!data.is_array() || data.size() != r) throw SchemaError("matrix row count mismatch");
    FMatrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        FVec row = fvec_from_json(data[i], F);
        if (row.size() != c) throw SchemaError("matrix column count mismatch");
        m.set_row(i, row);
    }
    return m;
}

json element_to_json(const Element& e) {
    if (e.is_zero() && e.degree < 0) return nullptr;
    return json{{"degree", e.degree}, {"coords", e.coords}};
}

Element element_from_json(const json& j, const PrimeField& F) {
    if (j.is_null()) return Element::zero();
    int degree = as<int>(j, "degree");
    if (degree < 0 || degree > 2) throw SchemaError("element degree out of range");
    return Element{degree, fvec_from_json(field(j, "coords"), F)};
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

void check_ring_hash(const json& j, const GradedAlgebra& R) {
    if (as<std::string>(j, "ring_hash") != ring_hash(R))
        throw SchemaError("document references a different ring");
}

} // namespace

json ring_to_json(const GradedAlgebra& R) {
    const RingCore& core = R.core();
    json mult = json::array();
    for (std::size_t i = 0; i < core.dim1(); ++i)
        for (std::size_t jj = 0; jj < core.dim1(); ++jj) mult.push_back(core.mul_basis(i, jj));
    return json{{"schema", 1},
                {"kind", "ring"},
                {"p", core.field().p()},
                {"dim1", core.dim1()},
                {"dim2", core.dim2()},
                {"mult11", std::move(mult)}};
}

GradedAlgebra ring_from_json(const json& j) {
    check_header(j, "ring");
    PrimeField F(as<std::uint32_t>(j, "p"));
    auto d1 = as<std::size_t>(j, "dim1");
    auto d2 = as<std::size_t>(j, "dim2");
    const json& mult = field(j, "mult11");
    if (!mult.is_array() || mult.size() != d1 * d1)
        throw SchemaError("mult11 must list dim1*dim1 products");
    std::vector<FVec> table;
    table.reserve(mult.size());
    for (const json& row : mult) {
        FVec v = fvec_from_json(row, F);
        if (v.size() != d2) throw SchemaError("mult11 product has the wrong length");
        table.push_back(std::move(v));
    }
    return GradedAlgebra(RingCore(F, d1, d2, std::move(table)));
}

std::string ring_hash(const GradedAlgebra& R) { return fnv1a_hex(ring_to_json(R).dump()); }

json element_matrix_to_json(const ElementMatrix& m) {
    json entries = json::array();
    for (const Element& e : m.entries) entries.push_back(element_to_json(e));
    return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", std::move(entries)}};
}

ElementMatrix element_matrix_from_json(const json& j, const PrimeField& F) {
    auto r = as<std::size_t>(j, "rows");
    auto c = as<std::size_t>(j, "cols");
    const json& entries = field(j, "entries");
    if (!entries.is_array() || entries.size() != r * c)
        throw SchemaError("entry count does not match the matrix shape");
    ElementMatrix m(r, c);
    for (std::size_t i = 0; i < r * c; ++i) m.entries[i] = element_from_json(entries[i], F);
    return m;
}

json module_to_json(const GradedModule& M) {
    json act1 = json::array(), act2 = json::array();
    for (std::size_t s = 0; s + 1 < M.num_slices(); ++s) {
        json per = json::array();
        for (std::size_t jj = 0; jj < M.ring().dim1(); ++jj)
            per.push_back(fmatrix_to_json(M.act1_matrix(jj, M.base_degree() + static_cast<int>(s))));
        act1.push_back(std::move(per));
    }
    for (std::size_t s = 0; s + 2 < M.num_slices(); ++s) {
        json per = json::array();
        for (std::size_t t = 0; t < M.ring().dim2(); ++t)
            per.push_back(fmatrix_to_json(M.act2_matrix(t, M.base_degree() + static_cast<int>(s))));
        act2.push_back(std::move(per));
    }
    return json{{"schema", 1},
                {"kind", "module"},
                {"ring_hash", ring_hash(M.ring())},
                {"base_degree", M.base_degree()},
                {"dims", M.dims()},
                {"act1", std::move(act1)},
                {"act2", std::move(act2)}};
}

GradedModule module_from_json(const json& j, const AlgebraPtr& R) {
    check_header(j, "module");
    if (!R) throw InputError("module_from_json: null ring");
    check_ring_hash(j, *R);
    const PrimeField& F = R->field();
    int base = as<int>(j, "base_degree");
    auto dims = as<std::vector<std::size_t>>(j, "dims");

    auto tensor = [&](const char* key, std::size_t per) {
        const json& outer = field(j, key);
        if (!outer.is_array()) throw SchemaError("action tensor is not an array");
        std::vector<std::vector<FMatrix>> out;
        for (const json& slice : outer) {
            if (!slice.is_array() || slice.size() != per)
                throw SchemaError("action tensor slice has the wrong arity");
            std::vector<FMatrix> mats;
            for (const json& mj : slice) mats.push_back(fmatrix_from_json(mj, F));
            out.push_back(std::move(mats));
        }
        return out;
    };
    return GradedModule(R, base, std::move(dims), tensor("act1", R->dim1()),
                        tensor("act2", R->dim2()));
}

json presentation_to_json(const Presentation& p) {
    return json{{"schema", 1},
                {"kind", "presentation"},
                {"ring_hash", ring_hash(*p.ring)},
                {"gen_degrees", p.gen_degrees},
                {"rels", element_matrix_to_json(p.rels)}};
}

Presentation presentation_from_json(const json& j, const AlgebraPtr& R) {
    check_header(j, "presentation");
    if (!R) throw InputError("presentation_from_json: null ring");
    check_ring_hash(j, *R);
    Presentation p{R, as<std::vector<int>>(j, "gen_degrees"),
                   element_matrix_from_json(field(j, "rels"), R->field())};
    p.validate();
    return p;
}

json certificate_to_json(const GdimCertificate& c) {
    if (!c.ring) throw InputError("certificate_to_json: certificate has no ring");
    json out{{"schema", 1},
             {"kind", "certificate"},
             {"ring_hash", ring_hash(*c.ring)},
             {"note", c.note},
             {"passed", c.passed},
             {"exact", c.exact}};
    switch (c.kind) {
    case GdimCertificate::Kind::PeriodicCR: {
        out["cert_kind"] = "periodic";
        json mats = json::array();
        for (const ElementMatrix& m : c.periodic) mats.push_back(element_matrix_to_json(m));
        out["matrices"] = std::move(mats);
        break;
    }
    case GdimCertificate::Kind::BoundedExt: {
        if (!c.bidual)
            throw InputError("certificate_to_json: bounded certificate lacks its bidual report");
        out["cert_kind"] = "bounded";
        out["module"] = module_to_json(c.bidual->map.source);
        out["depth"] = c.depth;
        break;
    }
    case GdimCertificate::Kind::Filtration:
    case GdimCertificate::Kind::Extension:
        out["cert_kind"] = "summary";
        out["composite_kind"] =
            c.kind == GdimCertificate::Kind::Filtration ? "filtration" : "extension";
        out["parts"] = c.parts.size();
        break;
    }
    return out;
}

GdimCertificate certificate_from_json(const json& j, const AlgebraPtr& R) {
    check_header(j, "certificate");
    if (!R) throw InputError("certificate_from_json: null ring");
    check_ring_hash(j, *R);
    std::string ck = as<std::string>(j, "cert_kind");
    std::string note = as<std::string>(j, "note");
    if (ck == "periodic") {
        const json& mats = field(j, "matrices");
        if (!mats.is_array() || mats.empty() || mats.size() > 2)
            throw SchemaError("periodic certificate needs one or two matrices");
        ElementMatrix d1 = element_matrix_from_json(mats[0], R->field());
        if (mats.size() == 1) return verify_periodic_cr(R, d1, note).cert;
        return verify_periodic_cr(R, d1, element_matrix_from_json(mats[1], R->field()), note).cert;
    }
    if (ck == "bounded") {
        GradedModule M = module_from_json(field(j, "module"), R);
        auto depth = as<std::size_t>(j, "depth");
        GdimCertificate cert = check_gdim_zero_bounded(M, depth);
        cert.note = note;
        return cert;
    }
    if (ck == "summary")
        throw SchemaError(
            "composite certificate summaries are not evidence; re-derive from the generating spec");
    throw SchemaError("unknown cert_kind: " + ck);
}

json module_map_to_json(const ModuleMap& m) {
    json blocks = json::array();
    for (const FMatrix& b : m.blocks) blocks.push_back(fmatrix_to_json(b));
    return json{{"schema", 1},
                {"kind", "map"},
                {"degree_shift", m.degree_shift},
                {"blocks", std::move(blocks)}};
}

ModuleMap module_map_from_json(const json& j, GradedModule source, GradedModule target) {
    check_header(j, "map");
    int shift = as<int>(j, "degree_shift");
    const json& bl = field(j, "blocks");
    if (!bl.is_array() || bl.size() != source.num_slices())
        throw SchemaError("map needs one block per source slice");
    const PrimeField& F = source.ring().field();
    std::vector<FMatrix> blocks;
    blocks.reserve(bl.size());
    for (std::size_t s = 0; s < bl.size(); ++s) {
        FMatrix b = fmatrix_from_json(bl[s], F);
        int d = source.base_degree() + static_cast<int>(s);
        if (b.rows() != target.dim(d + shift) || b.cols() != source.dim(d))
            throw SchemaError("map block has the wrong shape");
        blocks.push_back(std::move(b));
    }
    ModuleMap m{std::move(source), std::move(target), shift, std::move(blocks)};
    m.validate();
    return m;
}

json candidate_to_json(const ApproximationCandidate& c) {
    json s = json::array();
    for (std::size_t v : c.s) s.push_back(v);
    return json{{"schema", 1},
                {"kind", "candidate"},
                {"ring_hash", ring_hash(c.X.ring())},
                {"X", module_to_json(c.X)},
                {"Y", module_to_json(c.Y)},
                {"pi", module_map_to_json(c.pi)},
                {"iota", module_map_to_json(c.iota)},
                {"u", c.u},
                {"s", std::move(s)},
                {"cert", certificate_to_json(c.cert)}};
}

ApproximationCandidate candidate_from_json(const json& j, const AlgebraPtr& R) {
    check_header(j, "candidate");
    check_ring_hash(j, *R);
    GradedModule X = module_from_json(field(j, "X"), R);
    GradedModule Y = module_from_json(field(j, "Y"), R);
    GradedModule k = GradedModule::residue_field(R);
    ModuleMap pi = module_map_from_json(field(j, "pi"), X, std::move(k));
    ModuleMap iota = module_map_from_json(field(j, "iota"), Y, X);
    GdimCertificate cert = certificate_from_json(field(j, "cert"), R);
    auto u = as<std::uint64_t>(j, "u");
    std::vector<std::size_t> s;
    for (const json& e : field(j, "s")) {
        std::uint64_t v;
        try {
            v = e.get<std::uint64_t>();
        } catch (const json::exception&) {
            throw SchemaError("s entries must be nonnegative integers");
        }
        s.push_back(static_cast<std::size_t>(v));
    }
    return ApproximationCandidate{std::move(X),   std::move(cert),
                                  std::move(Y),   std::move(pi),
                                  std::move(iota), static_cast<std::size_t>(u),
                                  std::move(s)};
}

} // namespace gdimlab
