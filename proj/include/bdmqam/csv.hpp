#pragma once

#include <string>

namespace bdmqam {

// 9-significant-digit number formatting shared by every CSV writer.
std::string csv_num(double v);

}  // namespace bdmqam
