#pragma once

#include <map>
#include <memory>
#include <vector>

#include "prodcode/analysis.hpp"
#include "prodcode/bounds.hpp"
#include "prodcode/codec.hpp"

namespace testing {

inline std::shared_ptr<const prodcode::LinearizedPair> standard_pair(int q_log) {
    return std::make_shared<const prodcode::LinearizedPair>(prodcode::instantiate_standard(q_log));
}

inline prodcode::CodeInstance standard_code(int q_log, int r, int k) {
    return prodcode::build_code(standard_pair(q_log), r, k);
}

inline int weight(const prodcode::RowVector& w) { return static_cast<int>((w.array() != 0).count()); }

/// Weight distribution by plain odometer enumeration of every message.
inline std::map<int, std::uint64_t> brute_spectrum(const prodcode::CodeInstance& code) {
    const prodcode::Elem q = static_cast<prodcode::Elem>(code.field().order());
    std::vector<prodcode::Elem> msg(static_cast<std::size_t>(code.k), 0);
    std::map<int, std::uint64_t> counts;
    while (true) {
        ++counts[weight(prodcode::encode(code, msg))];
        std::size_t i = 0;
        while (i < msg.size() && ++msg[i] == q) msg[i++] = 0;
        if (i == msg.size()) break;
    }
    return counts;
}

}  // namespace testing
