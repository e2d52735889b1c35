#include "zonovol/volume.hpp"

namespace zonovol {

const char* method_name(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::Exact:
      return "exact";
    case VolumeMethod::Recursive:
      return "recursive";
    case VolumeMethod::Spectral:
      return "spectral";
    case VolumeMethod::Analytic:
      return "analytic";
  }
  return "?";
}

}  // namespace zonovol
