#include "process/records.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

#include "geom/center.hpp"
#include "geom/phi.hpp"

namespace hypercell::process {

const char* sampler_kind_name(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::ZeroCell: return "zero-cell";
        case SamplerKind::Arrangement: return "arrangement";
        case SamplerKind::DirectShape: return "direct-shape";
    }
    fail(ErrorCode::InvalidArgument, "sampler_kind_name: unknown kind");
}

SamplerKind sampler_kind_from_name(const std::string& name) {
    if (name == "zero-cell") return SamplerKind::ZeroCell;
    if (name == "arrangement") return SamplerKind::Arrangement;
    if (name == "direct-shape") return SamplerKind::DirectShape;
    fail(ErrorCode::InvalidArgument, "unknown sampler kind '" + name + "'");
}

CellRecord make_record(geom::Polytope polytope, const ProcessConfig& cfg, SamplerKind sampler,
                       double weight, RandomStream* rng, int mc_samples) {
    cfg.validate();
    if (polytope.dim != cfg.d) fail(ErrorCode::InvalidArgument, "make_record: dimension mismatch");
    if (!(weight > 0.0) || !std::isfinite(weight))
        fail(ErrorCode::InvalidArgument, "make_record: weight must be finite and > 0");

    CellRecord rec;
    rec.f = polytope.f();
    auto vol = geom::volume_centroid(polytope);
    rec.cent = vol.centroid;
    if (cfg.d <= 3) {
        rec.intrinsic = geom::intrinsic_volumes_exact(polytope);
    } else {
        RandomStream local(0x9ec04d5afeULL);
        rec.intrinsic = geom::intrinsic_volumes_mc(polytope, mc_samples, rng ? *rng : local);
    }
    auto phi = geom::phi_content(polytope, cfg.phi, 20000, rng);
    rec.phi_content = phi.value;
    if (!(rec.phi_content > 0.0))
        fail(ErrorCode::Numeric, "make_record: nonpositive Phi content " + to_str(rec.phi_content));
    rec.sampler = sampler;
    rec.weight = weight;
    rec.polytope = std::move(polytope);
    return rec;
}

Estimate typical_cell_expectation(const std::vector<CellRecord>& records,
                                  const std::function<double(const CellRecord&)>& g) {
    if (records.empty()) fail(ErrorCode::InsufficientData, "typical_cell_expectation: no records");
    if (!g) fail(ErrorCode::InvalidArgument, "typical_cell_expectation: null statistic");
    const size_t n = records.size();
    double sw = 0.0, swg = 0.0;
    std::vector<double> gv(n);
    for (size_t i = 0; i < n; ++i) {
        const auto& r = records[i];
        if (!(r.weight > 0.0) || !std::isfinite(r.weight))
            fail(ErrorCode::InvalidArgument, "typical_cell_expectation: record weight must be > 0");
        gv[i] = g(records[i]);
        if (!std::isfinite(gv[i])) fail(ErrorCode::Numeric, "typical_cell_expectation: non-finite statistic");
        sw += r.weight;
        swg += r.weight * gv[i];
    }
    Estimate est;
    est.value = swg / sw;
    if (n >= 2) {
        // Delta method for the ratio sum(w g)/sum(w): residuals w (g - R).
        double ss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double resid = records[i].weight * (gv[i] - est.value);
            ss += resid * resid;
        }
        est.stderr_ = std::sqrt(ss * (static_cast<double>(n) / (n - 1.0))) / sw;
    }
    return est;
}

namespace {

nlohmann::json vec_json(const Vec& v) {
    auto a = nlohmann::json::array();
    for (int k = 0; k < v.size(); ++k) a.push_back(v(k));
    return a;
}

Vec vec_from_json(const nlohmann::json& a, int d, const char* what) {
    if (!a.is_array() || a.size() != static_cast<size_t>(d))
        fail(ErrorCode::Io, std::string("archive: field '") + what + "' must be an array of d numbers");
    Vec v(d);
    for (int k = 0; k < d; ++k) {
        if (!a[k].is_number()) fail(ErrorCode::Io, std::string("archive: non-numeric entry in '") + what + "'");
        v(k) = a[k].get<double>();
    }
    return v;
}

std::vector<double> dvec_from_json(const nlohmann::json& a, const char* what) {
    if (!a.is_array()) fail(ErrorCode::Io, std::string("archive: field '") + what + "' must be an array");
    std::vector<double> out;
    out.reserve(a.size());
    for (const auto& x : a) {
        if (!x.is_number()) fail(ErrorCode::Io, std::string("archive: non-numeric entry in '") + what + "'");
        out.push_back(x.get<double>());
    }
    return out;
}

} // namespace

void write_archive(const std::string& path, const ArchiveHeader& header,
                   const std::vector<CellRecord>& records) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, "write_archive: cannot open '" + path + "'");

    nlohmann::json h;
    h["schema_version"] = header.schema_version;
    h["d"] = header.d;
    h["gamma"] = header.gamma;
    try {
        h["phi"] = nlohmann::json::parse(header.phi_json);
    } catch (const std::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("write_archive: header phi is not JSON: ") + e.what());
    }
    h["seed"] = header.seed;
    h["sampler"] = sampler_kind_name(header.sampler);
    out << h.dump() << '\n';

    for (const auto& r : records) {
        nlohmann::json j;
        j["polytope"] = nlohmann::json::parse(r.polytope.to_json());
        j["f"] = r.f;
        j["phi_content"] = r.phi_content;
        j["intrinsic"] = {{"value", r.intrinsic.value}, {"stderr", r.intrinsic.stderr_}};
        j["cent"] = vec_json(r.cent);
        j["sampler"] = sampler_kind_name(r.sampler);
        j["weight"] = r.weight;
        out << j.dump() << '\n';
    }
    out.flush();
    if (!out) fail(ErrorCode::Io, "write_archive: write to '" + path + "' failed");
}

Archive read_archive(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "read_archive: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::Io, "read_archive: missing header line");
    nlohmann::json h;
    try {
        h = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
        fail(ErrorCode::Io, std::string("read_archive: header parse: ") + e.what());
    }
    for (const char* key : {"schema_version", "d", "gamma", "phi", "seed", "sampler"})
        if (!h.contains(key)) fail(ErrorCode::Io, std::string("read_archive: header missing '") + key + "'");
    Archive archive;
    if (!h["schema_version"].is_number_integer() || h["schema_version"].get<int>() != 1)
        fail(ErrorCode::Io, "read_archive: unsupported schema_version");
    archive.header.schema_version = 1;
    archive.header.d = h["d"].get<int>();
    archive.header.gamma = h["gamma"].get<double>();
    archive.header.phi_json = h["phi"].dump();
    archive.header.seed = h["seed"].get<uint64_t>();
    archive.header.sampler = sampler_kind_from_name(h["sampler"].get<std::string>());
    if (archive.header.d < 1 || !(archive.header.gamma > 0.0))
        fail(ErrorCode::Io, "read_archive: header has invalid d or gamma");

    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            fail(ErrorCode::Io, "read_archive: line " + std::to_string(line_no) + ": " + e.what());
        }
        for (const char* key : {"polytope", "f", "phi_content", "intrinsic", "cent", "sampler", "weight"})
            if (!j.contains(key))
                fail(ErrorCode::Io, "read_archive: line " + std::to_string(line_no) + " missing '" + key + "'");
        CellRecord r;
        try {
            r.polytope = geom::Polytope::from_json(j["polytope"].dump());
        } catch (const Error& e) {
            fail(ErrorCode::Io, "read_archive: line " + std::to_string(line_no) + ": " + e.what());
        }
        if (r.polytope.dim != archive.header.d)
            fail(ErrorCode::Io, "read_archive: line " + std::to_string(line_no) + ": dimension mismatch");
        r.f = j["f"].get<int>();
        if (r.f != r.polytope.f())
            fail(ErrorCode::Io, "read_archive: line " + std::to_string(line_no) + ": facet count mismatch");
        r.phi_content = j["phi_content"].get<double>();
        if (!j["intrinsic"].is_object() || !j["intrinsic"].contains("value") || !j["intrinsic"].contains("stderr"))
            fail(ErrorCode::Io, "read_archive: line " + std::to_string(line_no) + ": bad intrinsic field");
        r.intrinsic.value = dvec_from_json(j["intrinsic"]["value"], "intrinsic.value");
        r.intrinsic.stderr_ = dvec_from_json(j["intrinsic"]["stderr"], "intrinsic.stderr");
        r.cent = vec_from_json(j["cent"], archive.header.d, "cent");
        r.sampler = sampler_kind_from_name(j["sampler"].get<std::string>());
        r.weight = j["weight"].get<double>();
        if (!(r.weight > 0.0) || !(r.phi_content > 0.0))
            fail(ErrorCode::Io, "read_archive: line " + std::to_string(line_no) + ": nonpositive weight or Phi");
        archive.records.push_back(std::move(r));
    }
    return archive;
}

} // namespace hypercell::process
