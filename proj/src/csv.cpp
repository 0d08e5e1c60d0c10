#include "bdmqam/csv.hpp"

#include <cstdio>

namespace bdmqam {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace bdmqam
