#pragma once

#include <cstdint>
#include <string>

#include "sphericity/matrix.hpp"
#include "sphericity/power.hpp"
#include "sphericity/rng.hpp"

namespace sphericity {

enum class EntryDist { StdNormal, CenteredGamma };

const char* entry_dist_name(EntryDist d);

/// Population: X = Sigma^{1/2} Z with Z i.i.d. entries from entry_dist.
/// nu4 is implied by the entry law: 3 (StdNormal), 4.5 (CenteredGamma).
struct PopulationSpec {
    EntryDist entry_dist = EntryDist::StdNormal;
    SigmaSpec sigma{ScaledIdentity{1.0}, 0};

    double nu4() const { return entry_dist == EntryDist::StdNormal ? 3.0 : 4.5; }
};

/// (master_seed, replicate_index) fully determines a sample; distinct
/// pairs give independent streams.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t replicate_index = 0;
};

/// One draw of Gamma(shape 4, rate 2) - 2 from the given stream.
double gamma_draw(RandomStream& stream);

/// Draw a p x n sample. Entries are generated column by column;
/// diagonal Sigma^{1/2} scales rows entrywise, ExplicitSPD uses the
/// symmetric matrix square root.
DataMatrix sample(const PopulationSpec& spec, Eigen::Index p, Eigen::Index n, SeedSpec seed);

}  // namespace sphericity
