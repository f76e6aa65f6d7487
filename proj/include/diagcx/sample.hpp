#pragma once

// Random inputs shared by the property tests and the acceptance suite.

#include <memory>
#include <random>
#include <string>

#include "diagcx/picture.hpp"

namespace diagcx::sample {

/// <a,b,c,d | ab=cd, cb=bc, ab=ba>
std::shared_ptr<const Presentation> abcd();

/// Grows a picture by random bottom attachments and random dipole insertions.
/// Attachments may form dipoles, so the result is usually unreduced.
Picture random_picture(std::mt19937_64& rng, std::shared_ptr<const Presentation> pres,
                       const Word& top, Variant v, int steps);

/// Tree with `carets` carets hung on uniformly chosen leaves.
Picture random_tree(std::mt19937_64& rng, int carets, Variant v = Variant::kPlanar);

Word random_word(std::mt19937_64& rng, const std::string& alphabet, int len);

/// Removes dipoles in a uniformly random order until none remain.
Picture reduce_randomly(Picture p, std::mt19937_64& rng);

}  // namespace diagcx::sample
