#include "pbpois/eigen_data.hpp"

#include <sstream>

#include "pbpois/errors.hpp"

namespace pbpois {

Scalar EigenData::pair(const std::vector<int>& exponents) const {
    if (static_cast<int>(exponents.size()) != size()) throw StructuralError("multi-index length differs from eigenvalue count");
    Scalar s;
    for (int i = 0; i < size(); ++i) {
        int e = exponents[static_cast<std::size_t>(i)];
        if (e != 0) s += values[static_cast<std::size_t>(i)] * Scalar(e);
    }
    return s;
}

EigenData EigenData::parse(const std::string& text) {
    EigenData d;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string trimmed;
        for (char ch : item) {
            if (ch != ' ') trimmed.push_back(ch);
        }
        d.values.push_back(Scalar::parse(trimmed));
    }
    if (d.values.empty()) throw std::invalid_argument("empty eigenvalue list");
    return d;
}

std::string EigenData::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += values[i].to_string();
    }
    return out;
}

}  // namespace pbpois
