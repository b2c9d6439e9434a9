#ifndef DPLAB_VERSION_HPP
#define DPLAB_VERSION_HPP

#include <string>

namespace dplab {

inline std::string version_string() { return "dp-lab 0.1.0"; }

}  // namespace dplab

#endif
