#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geom/polytope.hpp"
#include "geom/volumes.hpp"
#include "process/hits.hpp"

namespace hypercell::process {

enum class SamplerKind { ZeroCell, Arrangement, DirectShape };

const char* sampler_kind_name(SamplerKind kind);
SamplerKind sampler_kind_from_name(const std::string& name);

// One sampled cell with the derived quantities downstream estimators read.
// weight is an importance weight: 1 for arrangement cells, 1/V_d for zero
// cells (the zero cell is the volume-weighted typical cell).
struct CellRecord {
    geom::Polytope polytope;
    int f = 0;
    double phi_content = 0.0;
    geom::IntrinsicVolumes intrinsic;
    Vec cent;
    SamplerKind sampler = SamplerKind::ZeroCell;
    double weight = 1.0;
};

// Fills the derived fields from the polytope.  Intrinsic volumes are exact
// for d <= 3; above that V_0 and V_d stay exact and the rest use Monte Carlo
// with `mc_samples` projections.  `rng` feeds any Monte Carlo fallback; when
// null a fixed internal stream keeps results reproducible.
CellRecord make_record(geom::Polytope polytope, const ProcessConfig& cfg, SamplerKind sampler,
                       double weight, RandomStream* rng = nullptr, int mc_samples = 2000);

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

// E g(Z) for the typical cell from volume-weighted records via the ratio
// estimator sum(w g) / sum(w) with delta-method standard error.  Exact and
// order-deterministic; throws on empty input.
Estimate typical_cell_expectation(const std::vector<CellRecord>& records,
                                  const std::function<double(const CellRecord&)>& g);

// JSON-lines archive: a header line, then one record per line.  Floats are
// serialized as shortest round-trip decimals, so write/read is bit-exact.
struct ArchiveHeader {
    int schema_version = 1;
    int d = 0;
    double gamma = 0.0;
    std::string phi_json;
    uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::ZeroCell;
};

struct Archive {
    ArchiveHeader header;
    std::vector<CellRecord> records;
};

void write_archive(const std::string& path, const ArchiveHeader& header,
                   const std::vector<CellRecord>& records);
Archive read_archive(const std::string& path);

} // namespace hypercell::process
