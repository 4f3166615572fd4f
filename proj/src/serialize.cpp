#include "prodcode/serialize.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace prodcode {

namespace {

Json hex_array(const std::vector<Elem>& values) {
    Json arr = Json::array();
    for (Elem v : values) arr.push_back(to_hex(v));
    return arr;
}

}  // namespace

Json field_json(const Field& F) {
    return Json{{"M", F.degree()}, {"reduction_poly_hex", to_hex(F.reduction_poly())}};
}

Json pair_json(const LinearizedPair& pair) {
    const Field& F = pair.field();
    Json j;
    j["q"] = pair.f.q();
    j["M"] = F.degree();
    j["reduction_poly_hex"] = to_hex(F.reduction_poly());
    j["f_coeffs_hex"] = hex_array(pair.f.coeffs);
    j["Zf_hex"] = hex_array(pair.Zf);
    j["Zg_hex"] = hex_array(pair.Zg);
    return j;
}

Json profile_json(const DegreeProfile& profile) {
    Json j;
    j["n_frak"] = profile.n_frak;
    j["r"] = profile.r;
    j["D"] = profile.D;
    Json bps = Json::array();
    for (const auto& bp : profile.breakpoints) bps.push_back({{"t", bp.t}, {"k_t", bp.k}, {"partial", bp.degree}});
    j["breakpoints"] = bps;
    j["partials"] = profile.partials;
    Json ivs = Json::array();
    for (const auto& iv : profile.intervals) ivs.push_back({{"t", iv.t}, {"first", iv.first}, {"last", iv.last}});
    j["intervals"] = ivs;
    j["max_degree"] = profile.max_degree();
    j["reaches_length"] = profile.reaches_length();
    return j;
}

Json bound_json(const BoundReport& rep) {
    Json j;
    j["k"] = rep.k;
    j["partial_k"] = rep.partial_k;
    j["rs_degree_lower"] = rep.rs_degree_lower;
    j["lower_opt"] = rep.lower.value;
    j["lrc_upper"] = rep.lrc_upper;
    j["grid_upper"] = rep.grid.value;
    j["gridv2_upper"] = rep.gridv2_upper ? Json(*rep.gridv2_upper) : Json(nullptr);
    j["exact"] = rep.exact ? Json(*rep.exact) : Json(nullptr);
    j["witness_a"] = rep.grid.a;
    j["witness_b"] = rep.grid.b;
    j["witness_nr"] = rep.lower.n_rows;
    j["witness_nc"] = rep.lower.n_cols;
    return j;
}

Json spectrum_json(const WeightSpectrum& spectrum) {
    Json counts = Json::array();
    for (const auto& [w, c] : spectrum.counts) counts.push_back({{"weight", w}, {"count", c}});
    return Json{{"exact", spectrum.exact}, {"counts", counts}};
}

void write_generator_csv(std::ostream& out, const CodeInstance& code) {
    const Field& F = code.field();
    Json header;
    header["q"] = code.pair->f.q();
    header["M"] = F.degree();
    header["reduction_poly_hex"] = to_hex(F.reduction_poly());
    header["r"] = code.r;
    header["k"] = code.k;
    header["coordinate_order"] = "Zf-major";
    out << "# " << header.dump() << '\n';
    for (Eigen::Index i = 0; i < code.G.rows(); ++i) {
        for (Eigen::Index j = 0; j < code.G.cols(); ++j) {
            if (j) out << ',';
            out << to_hex(code.G(i, j));
        }
        out << '\n';
    }
}

std::string bound_csv_row(const BoundReport& rep) {
    std::ostringstream os;
    os << rep.k << ',' << rep.partial_k << ',' << rep.rs_degree_lower << ',' << rep.lower.value << ','
       << rep.lrc_upper << ',' << rep.grid.value << ',';
    if (rep.gridv2_upper) os << *rep.gridv2_upper;
    os << ',';
    if (rep.exact) os << *rep.exact;
    os << ',' << rep.grid.a << ',' << rep.grid.b << ',' << rep.lower.n_rows << ',' << rep.lower.n_cols;
    return os.str();
}

void write_spectrum_csv(std::ostream& out, const WeightSpectrum& spectrum) {
    out << "weight,count\n";
    for (const auto& [w, c] : spectrum.counts) out << w << ',' << c << '\n';
}

std::string mask_to_rle(const ErasureMask& mask) {
    std::ostringstream os;
    os << Json{{"n_frak", mask.n}}.dump() << '\n';
    bool first = true;
    for (std::size_t i = 0; i < mask.erased.size();) {
        std::size_t j = i;
        while (j < mask.erased.size() && mask.erased[j] == mask.erased[i]) ++j;
        if (!first) os << ' ';
        os << int(mask.erased[i]) << 'x' << (j - i);
        first = false;
        i = j;
    }
    os << '\n';
    return os.str();
}

ErasureMask mask_from_rle(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("mask: missing header line");
    int n = 0;
    try {
        n = Json::parse(header).at("n_frak").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("mask: bad header: ") + e.what());
    }
    if (n <= 0) throw std::invalid_argument("mask: n_frak must be positive");
    ErasureMask mask(n);
    std::size_t pos = 0;
    std::string tok;
    while (in >> tok) {
        const auto x = tok.find('x');
        if (x != 1 || (tok[0] != '0' && tok[0] != '1') || x + 1 >= tok.size())
            throw std::invalid_argument("mask: bad run '" + tok + "'");
        std::size_t len = 0;
        for (std::size_t c = x + 1; c < tok.size(); ++c) {
            if (!std::isdigit(static_cast<unsigned char>(tok[c]))) throw std::invalid_argument("mask: bad run '" + tok + "'");
            len = len * 10 + static_cast<std::size_t>(tok[c] - '0');
        }
        if (pos + len > mask.erased.size()) throw std::invalid_argument("mask: runs exceed n_frak^2 cells");
        for (std::size_t c = 0; c < len; ++c) mask.erased[pos++] = tok[0] == '1';
    }
    if (pos != mask.erased.size()) throw std::invalid_argument("mask: runs cover fewer than n_frak^2 cells");
    return mask;
}

}  // namespace prodcode
