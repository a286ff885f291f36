#include "gdimlab/presets.hpp"

#include <algorithm>
#include <cctype>
#include <ctime>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "gdimlab/approximation.hpp"
#include "gdimlab/constructions.hpp"
#include "gdimlab/errors.hpp"
#include "gdimlab/homology.hpp"

namespace gdimlab {

namespace {

using nlohmann::json;

bool valid_name(const std::string& s) {
    if (s.empty() || s.size() > 128) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-')
            return false;
    return true;
}

std::string timestamp_utc() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string vec_str(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s + "]";
}

std::string coords_str(const FVec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s + "]";
}

std::size_t pw(std::size_t base, std::size_t e) {
    std::size_t acc = 1;
    while (e--) acc *= base;
    return acc;
}

std::vector<std::size_t> bass_closed_form(std::size_t r, std::size_t N) {
    std::vector<std::size_t> mu{r};
    for (std::size_t i = 1; i <= N; ++i) mu.push_back(pw(r, i + 1) - pw(r, i - 1));
    return mu;
}

std::vector<std::size_t> koszul_closed_form(std::size_t r, std::size_t N) {
    std::vector<std::size_t> b;
    for (std::size_t i = 0; i <= N; ++i) b.push_back((pw(r, i + 1) - 1) / (r - 1));
    return b;
}

struct CheckList {
    json checks = json::array();
    json tables = json::object();
    json counterexample; // stays null while everything passes
    bool all = true;

    void add(const std::string& name, bool pass, json data = json::object()) {
        data["name"] = name;
        data["pass"] = pass;
        if (!pass && counterexample.is_null()) counterexample = data;
        all = all && pass;
        checks.push_back(std::move(data));
    }
};

PresetResult assemble(const PresetOptions& opt, json params, CheckList&& cl,
                      const std::string& tables_csv) {
    json report{{"schema", 1},        {"kind", "report"},
                {"preset", opt.name}, {"p", opt.p},
                {"seed", opt.seed},   {"params", std::move(params)},
                {"checks", cl.checks}, {"tables", cl.tables},
                {"pass", cl.all},     {"counterexample", cl.counterexample}};
    std::ostringstream csv;
    csv << "# generated " << timestamp_utc() << "\n";
    csv << "preset," << opt.name << "\n\ncheck,pass\n";
    for (const json& c : cl.checks)
        csv << c.at("name").get<std::string>() << "," << (c.at("pass").get<bool>() ? 1 : 0)
            << "\n";
    csv << tables_csv;
    return PresetResult{cl.all ? 0 : 1, std::move(report), csv.str()};
}

// Preset checks report a failed sample as a failed check row instead of
// aborting, hence the optional wrapper around the throwing sampler.
std::optional<VerifiedQuotient> try_verified_quotient(const DegreeTwoRingData& S,
                                                      std::uint64_t seed, std::size_t budget) {
    try {
        return sample_verified_quotient(S, seed, budget);
    } catch (const SearchExhausted&) {
        return std::nullopt;
    }
}

PresetResult preset_thm31(const PresetOptions& opt) {
    PrimeField F(opt.p);
    CheckList cl;
    std::mt19937_64 rng(opt.seed);
    json rings = json::array();
    std::ostringstream tcsv;
    tcsv << "\nr,quadric,h0,h1,h2,socle_dim,attempts\n";

    for (std::size_t r = 2; r <= 4; ++r) {
        DegreeTwoRingData S = build_circulant_ring(F, r);
        auto vq = try_verified_quotient(S, rng(), 60);
        if (!vq) {
            cl.add("ring-shape-r" + std::to_string(r), false,
                   {{"r", r}, {"error", "no verified quadric in 60 samples"}});
            continue;
        }
        HilbertCoeffs h = hilbert_coeffs(*vq->ring);
        std::size_t soc = socle(*vq->ring).dim();
        bool ok = h.h0 == 1 && h.h1 == r + 1 && h.h2 == r && soc == vq->ring->dim2();
        json row{{"r", r},
                 {"quadric", vq->quadric},
                 {"hilbert", {h.h0, h.h1, h.h2}},
                 {"socle_dim", soc},
                 {"attempts", vq->attempts}};
        cl.add("ring-shape-r" + std::to_string(r), ok, row);
        rings.push_back(std::move(row));
        tcsv << r << "," << coords_str(vq->quadric) << "," << h.h0 << "," << h.h1 << "," << h.h2
             << "," << soc << "," << vq->attempts << "\n";
    }

    // The series identities are conclusions about rings that carry a nonfree
    // module of G-dimension zero, so the series rings come from the certified
    // factorization construction; a shape-verified quadric alone can miss the
    // hypothesis class and genuinely have other Bass numbers.
    tcsv << "\nr,series,measured,expected\n";
    for (std::size_t r = 2; r <= 3; ++r) {
        DegreeTwoRingData S = build_circulant_ring(F, r);
        AlgebraPtr R;
        try {
            PeriodicModuleResult m = sample_matrix_factorization(S, 1, opt.seed);
            if (!m.cert.passed) throw CertificateRejected("factorization certificate failed");
            R = m.ring;
        } catch (const std::runtime_error& ex) {
            cl.add("bass-series-r" + std::to_string(r), false, {{"r", r}, {"error", ex.what()}});
            continue;
        }
        std::vector<std::size_t> mu = bass_numbers(R, 6);
        std::vector<std::size_t> mu_want = bass_closed_form(r, 6);
        cl.add("bass-series-r" + std::to_string(r), mu == mu_want,
               {{"r", r}, {"measured", mu}, {"expected", mu_want}});
        tcsv << r << ",bass," << vec_str(mu) << "," << vec_str(mu_want) << "\n";

        KoszulReport kz = koszul_check(R, 5);
        std::vector<std::size_t> diag;
        for (int i = 0; i <= 5; ++i) diag.push_back(kz.betti.at(i, i));
        std::vector<std::size_t> diag_want = koszul_closed_form(r, 5);
        cl.add("koszul-diagonal-r" + std::to_string(r), kz.is_koszul_to_N && diag == diag_want,
               {{"r", r},
                {"diagonal_only", kz.is_koszul_to_N},
                {"measured", diag},
                {"expected", diag_want}});
        tcsv << r << ",koszul," << vec_str(diag) << "," << vec_str(diag_want) << "\n";
    }

    cl.tables["rings"] = std::move(rings);
    return assemble(opt, json{{"rs", {2, 3, 4}}, {"bass_depth", 6}, {"koszul_depth", 5}},
                    std::move(cl), tcsv.str());
}

PresetResult preset_thm42(const PresetOptions& opt) {
    PrimeField F(opt.p);
    CheckList cl;
    DegreeTwoRingData S = build_circulant_ring(F, opt.r);
    json rows = json::array();
    std::ostringstream tcsv;
    tcsv << "\nn_terms,dim0,dim1,cert,structure\n";

    for (std::size_t n = 1; n <= opt.nmax; ++n) {
        std::string tag = "-n" + std::to_string(n);
        try {
            PeriodicModuleResult m = sample_matrix_factorization(S, n, opt.seed + n);
            bool cok = m.cert.passed && m.cert.exact &&
                       m.cert.kind == GdimCertificate::Kind::PeriodicCR;
            std::vector<std::size_t> want{pw(2, n), pw(2, n) * opt.r};
            bool hok = m.module.dims() == want;
            cl.add("mf-certificate" + tag, cok && hok,
                   {{"n_terms", n},
                    {"dims", m.module.dims()},
                    {"expected_dims", want},
                    {"note", m.cert.note}});
            Theorem31Report rep = verify_theorem31(m.ring, m.module, m.cert, 6);
            cl.add("mf-structure" + tag, rep.all_ok(),
                   {{"n_terms", n}, {"b", rep.b}, {"a", rep.a}, {"betti", rep.betti_row}});
            rows.push_back(json{{"n_terms", n},
                                {"dims", m.module.dims()},
                                {"cert", cok && hok},
                                {"structure", rep.all_ok()}});
            tcsv << n << "," << m.module.dims()[0] << "," << m.module.dims()[1] << ","
                 << (cok && hok) << "," << rep.all_ok() << "\n";
        } catch (const SearchExhausted& e) {
            cl.add("mf-certificate" + tag, false, {{"n_terms", n}, {"error", e.what()}});
        }
    }

    // fixed four-variable fixture with the alternating 2x2 pair
    auto V = std::make_shared<const GradedAlgebra>(seven_quadric_ring(F));
    HilbertCoeffs h = hilbert_coeffs(*V);
    cl.add("fixture-hilbert", h.h0 == 1 && h.h1 == 4 && h.h2 == 3,
           {{"hilbert", {h.h0, h.h1, h.h2}}});
    auto e = [&](std::size_t j) {
        FVec c(V->dim1(), 0);
        c[j] = 1;
        return Element{1, std::move(c)};
    };
    auto neg = [&](const Element& a) { return Element{1, fvec_scale(F, F.neg(1), a.coords)}; };
    ElementMatrix d1(2, 2), d2(2, 2);
    d1.at(0, 0) = e(2);
    d1.at(0, 1) = e(0);
    d1.at(1, 0) = e(3);
    d1.at(1, 1) = e(1);
    d2.at(0, 0) = e(1);
    d2.at(0, 1) = neg(e(0));
    d2.at(1, 0) = neg(e(3));
    d2.at(1, 1) = e(2);
    try {
        PeriodicResult pr = verify_periodic_cr(V, d1, d2, "alternating 2x2 pair");
        bool dok = pr.module.dims() == std::vector<std::size_t>{2, 6};
        cl.add("fixture-certificate", pr.cert.passed && dok, {{"dims", pr.module.dims()}});
        Theorem31Report rep = verify_theorem31(V, pr.module, pr.cert, 6);
        cl.add("fixture-structure", rep.all_ok(),
               {{"r", rep.r}, {"b", rep.b}, {"a", rep.a}, {"betti", rep.betti_row}});
        tcsv << "fixture," << pr.module.dims()[0] << "," << pr.module.dims()[1] << ","
             << (pr.cert.passed && dok) << "," << rep.all_ok() << "\n";
    } catch (const std::runtime_error& ex) {
        cl.add("fixture-certificate", false, {{"error", ex.what()}});
    }

    cl.tables["factorizations"] = std::move(rows);
    return assemble(opt, json{{"r", opt.r}, {"nmax", opt.nmax}, {"structure_depth", 6}},
                    std::move(cl), tcsv.str());
}

PresetResult preset_thm51(const PresetOptions& opt) {
    PrimeField F(opt.p);
    CheckList cl;
    std::mt19937_64 rng(opt.seed);
    DegreeTwoRingData S = build_circulant_ring(F, opt.r);
    auto vq = try_verified_quotient(S, rng(), 60);
    std::ostringstream tcsv;
    if (!vq) {
        cl.add("ring-shape", false, {{"error", "no verified quadric in 60 samples"}});
        return assemble(opt, json{{"r", opt.r}}, std::move(cl), tcsv.str());
    }
    AlgebraPtr R = vq->ring;
    cl.add("ring-shape", true, {{"quadric", vq->quadric}, {"attempts", vq->attempts}});

    FamilyInputs in;
    try {
        in = sample_family_inputs(R, opt.count, opt.seed);
    } catch (const SearchExhausted& ex) {
        cl.add("family-inputs", false, {{"error", ex.what()}});
        return assemble(opt, json{{"r", opt.r}, {"count", opt.count}}, std::move(cl), tcsv.str());
    }
    cl.add("family-inputs", true, {{"count", in.xs.size()}, {"z", in.z.coords}});

    bool certs = true, gens = true, local_all = true, structure = true;
    json first_bad;
    json mods = json::array();
    tcsv << "\nx,n,dim0,dim1,min_gens,cert,endo_local,structure\n";
    for (const Element& x : in.xs) {
        for (std::size_t n = 1; n <= opt.nmax; ++n) {
            json row{{"x", x.coords}, {"n", n}};
            bool row_ok = false;
            try {
                FamilyResult fam = family_module(R, FamilySpec{x, in.z, n});
                bool c = fam.cert.kind == GdimCertificate::Kind::Filtration &&
                         fam.cert.passed && fam.cert.exact;
                std::size_t g = minimal_generators(fam.module).count;
                bool l = is_local(endomorphism_algebra(fam.module));
                Theorem31Report rep = verify_theorem31(R, fam.module, fam.cert, 6);
                row["dims"] = fam.module.dims();
                row["min_gens"] = g;
                row["cert"] = c;
                row["endo_local"] = l;
                row["structure"] = rep.all_ok();
                certs &= c;
                gens &= (g == n);
                local_all &= l;
                structure &= rep.all_ok();
                row_ok = c && g == n && l && rep.all_ok();
                tcsv << coords_str(x.coords) << "," << n << "," << fam.module.dims()[0] << ","
                     << fam.module.dims()[1] << "," << g << "," << c << "," << l << ","
                     << rep.all_ok() << "\n";
            } catch (const std::runtime_error& ex) {
                row["error"] = ex.what();
                certs = false;
            }
            if (!row_ok && first_bad.is_null()) first_bad = row;
            mods.push_back(std::move(row));
        }
    }
    auto agg = [&](const std::string& name, bool pass) {
        json data{{"modules", mods.size()}};
        if (!pass) data["first_failure"] = first_bad;
        cl.add(name, pass, std::move(data));
    };
    agg("family-certificates", certs);
    agg("family-generators", gens);
    agg("family-endomorphisms-local", local_all);
    agg("family-structure", structure);

    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= opt.nmax; ++n) ns.push_back(n);
    SweepReport sw = pairwise_noniso_sweep(R, in.xs, ns);
    std::map<std::string, std::size_t> verdicts;
    for (const SweepPairVerdict& v : sw.pairs) ++verdicts[v.distinguished_by];
    bool distinct = sw.all_distinguished && sw.entries.size() == in.xs.size() * ns.size() &&
                    verdicts.count("duplicate-spec") == 0 && verdicts.count("none") == 0;
    cl.add("family-pairwise-distinct", distinct,
           {{"entries", sw.entries.size()}, {"pairs", sw.pairs.size()}, {"verdicts", verdicts}});

    tcsv << "\npair_first,pair_second,distinguished_by\n";
    for (const SweepPairVerdict& v : sw.pairs)
        tcsv << v.first << "," << v.second << "," << v.distinguished_by << "\n";

    cl.tables["modules"] = std::move(mods);
    return assemble(
        opt, json{{"r", opt.r}, {"count", opt.count}, {"nmax", opt.nmax}, {"structure_depth", 6}},
        std::move(cl), tcsv.str());
}

PresetResult preset_thm61(const PresetOptions& opt) {
    CheckList cl;
    json grids = json::array();
    std::ostringstream tcsv;
    tcsv << "\nr,u,s,y0,y1,y2,margin\n";
    for (std::size_t r = 2; r <= 6; ++r) {
        ObstructionReport rep = obstruction_unsatisfiable(r, opt.umax, opt.smax, opt.len);
        bool ok = rep.unsatisfiable() && rep.margins_match && !rep.out_of_hypothesis;
        cl.add("obstruction-grid-r" + std::to_string(r), ok,
               {{"r", r},
                {"rows", rep.rows.size()},
                {"satisfiable", rep.satisfiable_count},
                {"margins_match", rep.margins_match},
                {"symbolic", rep.symbolic}});
        for (const ObstructionRow& row : rep.rows) {
            grids.push_back(json{{"r", r},
                                 {"u", row.u},
                                 {"s", row.s},
                                 {"y", {row.dims.y0, row.dims.y1, row.dims.y2}},
                                 {"margin", row.dims.margin}});
            tcsv << r << "," << row.u << "," << vec_str(row.s) << "," << row.dims.y0 << ","
                 << row.dims.y1 << "," << row.dims.y2 << "," << row.dims.margin << "\n";
        }
    }
    cl.tables["grid"] = std::move(grids);
    return assemble(opt,
                    json{{"rs", {2, 3, 4, 5, 6}},
                         {"umax", opt.umax},
                         {"smax", opt.smax},
                         {"len", opt.len}},
                    std::move(cl), tcsv.str());
}

PresetResult preset_negcontrols(const PresetOptions& opt) {
    PrimeField F(opt.p);
    CheckList cl;
    auto Z = std::make_shared<const GradedAlgebra>(square_zero_ring(F));
    GradedModule k = GradedModule::residue_field(Z);
    GradedModule freeR = free_module(Z, {0});

    BidualReport bd = bidual_check(k);
    cl.add("k-bidual-fails", !bd.is_iso, {{"is_iso", bd.is_iso}});

    std::size_t ext1 = ext(k, freeR, 1).total(1);
    cl.add("k-ext1-nonzero", ext1 > 0, {{"ext1_dim", ext1}});

    GdimCertificate fr = check_gdim_zero_bounded(free_module(Z, {0, 1}), 4);
    cl.add("free-module-certified", fr.passed && fr.exact, {{"rank", 2}});

    std::mt19937_64 rng(opt.seed);
    const std::size_t samples = 50;
    std::size_t failed = 0, two_generated = 0;
    json first_pass; // a sample that wrongly certifies would land here
    std::ostringstream tcsv;
    tcsv << "\nsample,relations,dim1,min_gens,bounded_rejects\n";
    for (std::size_t i = 0; i < samples; ++i) {
        std::size_t ncols = 1 + rng() % 3;
        ElementMatrix rels(2, ncols);
        for (std::size_t c = 0; c < ncols; ++c) {
            FVec a(2), b(2);
            do {
                for (auto& v : a) v = static_cast<std::uint32_t>(rng() % F.p());
                for (auto& v : b) v = static_cast<std::uint32_t>(rng() % F.p());
            } while (fvec_is_zero(a) && fvec_is_zero(b));
            if (!fvec_is_zero(a)) rels.at(0, c) = Element{1, a};
            if (!fvec_is_zero(b)) rels.at(1, c) = Element{1, b};
        }
        Presentation pres{Z, {0, 0}, rels};
        GradedModule M = coker(pres).module();
        std::size_t g = minimal_generators(M).count;
        two_generated += (g == 2);
        bool rejected = !check_gdim_zero_bounded(M, 4).passed && !is_free(M);
        failed += rejected;
        if (!rejected && first_pass.is_null())
            first_pass = json{{"sample", i}, {"dims", M.dims()}, {"min_gens", g}};
        tcsv << i << "," << ncols << "," << M.dim(1) << "," << g << "," << rejected << "\n";
    }
    json data{{"samples", samples}, {"rejected", failed}, {"two_generated", two_generated}};
    if (!first_pass.is_null()) data["first_failure"] = first_pass;
    cl.add("random-nonfree-all-rejected", failed == samples && two_generated == samples,
           std::move(data));

    return assemble(opt, json{{"depth", 4}, {"samples", samples}}, std::move(cl), tcsv.str());
}

} // namespace

SessionStore::SessionStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw InputError("SessionStore: cannot create directory " + dir_.string());
}

std::filesystem::path SessionStore::path_of(const std::string& name) const {
    if (!valid_name(name))
        throw InputError("SessionStore: artifact names use [A-Za-z0-9._-] only, got \"" + name +
                         "\"");
    return dir_ / (name + ".json");
}

bool SessionStore::exists(const std::string& name) const {
    return std::filesystem::exists(path_of(name));
}

std::vector<std::string> SessionStore::names() const {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() != ".json") continue;
        out.push_back(entry.path().stem().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

void SessionStore::save(const std::string& name, const nlohmann::json& doc) const {
    std::filesystem::path p = path_of(name);
    std::ofstream out(p);
    if (!out) throw InputError("SessionStore: cannot open " + p.string() + " for writing");
    out << doc.dump(2) << "\n";
    if (!out) throw InputError("SessionStore: write to " + p.string() + " failed");
}

nlohmann::json SessionStore::load(const std::string& name) const {
    std::filesystem::path p = path_of(name);
    std::ifstream in(p);
    if (!in) throw InputError("SessionStore: no artifact named \"" + name + "\"");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("SessionStore: " + name + ".json is not valid JSON: " + e.what());
    }
}

void SessionStore::save_ring(const std::string& name, const GradedAlgebra& R) const {
    save(name, ring_to_json(R));
}

AlgebraPtr SessionStore::load_ring(const std::string& name) const {
    return std::make_shared<const GradedAlgebra>(ring_from_json(load(name)));
}

void SessionStore::save_module(const std::string& name, const GradedModule& M) const {
    save(name, module_to_json(M));
}

GradedModule SessionStore::load_module(const std::string& name, const AlgebraPtr& R) const {
    return module_from_json(load(name), R);
}

void SessionStore::save_certificate(const std::string& name, const GdimCertificate& c) const {
    save(name, certificate_to_json(c));
}

GdimCertificate SessionStore::load_certificate(const std::string& name,
                                               const AlgebraPtr& R) const {
    return certificate_from_json(load(name), R);
}

PresetResult run_preset(const PresetOptions& opt) {
    PrimeField probe(opt.p); // rejects a bad p before any work happens
    (void)probe;
    if (opt.r < 2)
        throw InputError("run_preset: r must be at least 2 (the quotient ring is non-Gorenstein "
                         "only for r >= 2)");
    if (opt.nmax < 1 || opt.nmax > 8)
        throw InputError("run_preset: nmax must be between 1 and 8");
    if (opt.count < 1 || opt.count > 64)
        throw InputError("run_preset: count must be between 1 and 64");
    if (opt.r > 8) throw InputError("run_preset: r must be at most 8 at desk scale");
    if (opt.umax > 8 || opt.smax > 8 || opt.len > 8)
        throw InputError("run_preset: obstruction grid bounds must be at most 8");

    if (opt.name == "thm31") return preset_thm31(opt);
    if (opt.name == "thm42") return preset_thm42(opt);
    if (opt.name == "thm51") return preset_thm51(opt);
    if (opt.name == "thm61") return preset_thm61(opt);
    if (opt.name == "negcontrols") return preset_negcontrols(opt);
    throw InputError("run_preset: unknown preset \"" + opt.name +
                     "\" (expected thm31, thm42, thm51, thm61 or negcontrols)");
}

std::pair<std::filesystem::path, std::filesystem::path>
write_report(const PresetResult& res, const std::filesystem::path& dir, const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InputError("write_report: cannot create directory " + dir.string());
    std::filesystem::path pj = dir / (name + "_report.json");
    std::filesystem::path pc = dir / (name + "_report.csv");
    {
        std::ofstream out(pj);
        if (!out) throw InputError("write_report: cannot write " + pj.string());
        out << res.report.dump(2) << "\n";
    }
    {
        std::ofstream out(pc);
        if (!out) throw InputError("write_report: cannot write " + pc.string());
        out << res.csv;
    }
    return {pj, pc};
}

} // namespace gdimlab
