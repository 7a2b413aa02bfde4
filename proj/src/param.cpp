#include "drh/param.hpp"

#include <sstream>

namespace drh {

std::string ParamRational::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_params = false;
        std::ostringstream mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (has_params) mono << "*";
            if (i == 0)
                mono << "xi";
            else
                mono << "G" << i;
            if (e[i] > 1) mono << "^" << e[i];
            has_params = true;
        }
        if (!has_params) {
            os << rat_to_string(a);
        } else {
            if (a != 1) os << rat_to_string(a) << "*";
            os << mono.str();
        }
    }
    return os.str();
}

}  // namespace drh
