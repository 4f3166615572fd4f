#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "prodcode/analysis.hpp"
#include "prodcode/bounds.hpp"
#include "prodcode/codec.hpp"

namespace prodcode {

using Json = nlohmann::ordered_json;

Json field_json(const Field& F);
Json pair_json(const LinearizedPair& pair);
Json profile_json(const DegreeProfile& profile);
Json bound_json(const BoundReport& rep);
Json spectrum_json(const WeightSpectrum& spectrum);

/// Header line "# {json}" then one row of G per line, hex, comma separated.
void write_generator_csv(std::ostream& out, const CodeInstance& code);

inline constexpr const char* kBoundsCsvHeader =
    "k,partial_k,rs_degree_lower,lower_opt,lrc_upper,grid_upper,gridv2_upper,exact,"
    "witness_a,witness_b,witness_nr,witness_nc";
std::string bound_csv_row(const BoundReport& rep);

void write_spectrum_csv(std::ostream& out, const WeightSpectrum& spectrum);

/// {"n_frak":N} on the first line, then row-major runs "<bit>x<count>"
/// separated by spaces.
std::string mask_to_rle(const ErasureMask& mask);
/// Throws std::invalid_argument on malformed input.
ErasureMask mask_from_rle(const std::string& text);

}  // namespace prodcode
