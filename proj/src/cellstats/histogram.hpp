#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>

#include <json.hpp>

#include "process/records.hpp"

namespace hypercell::cellstats {

struct QEntry {
    double q = 0.0;
    double stderr_ = 0.0;
};

// Empirical facet-count distribution of the typical cell.  Keys run densely
// over the observed range of f; r[n] is the upper tail sum_{k >= n} q[k].
// By construction r is nonincreasing and r[n] - r[n+1] == q[n] exactly.
struct FacetHistogram {
    std::map<int, QEntry> q;
    std::map<int, double> r;
    std::size_t total_samples = 0;

    void to_csv(std::ostream& os) const; // columns n,q,q_stderr,r
    nlohmann::json to_json() const;
};

// Ratio estimators sum(w 1{f=n}) / sum(w) with Poisson-bootstrap standard
// errors.  weighted=false treats every record as weight 1, which is only
// meaningful for a single sampler kind producing typical-cell samples;
// zero-cell records are volume biased and require weighted=true.
FacetHistogram facet_histogram(const std::vector<process::CellRecord>& records, bool weighted,
                               int bootstrap_resamples = 1000, uint64_t seed = 0x9d1c3b5a7fULL);

} // namespace hypercell::cellstats
