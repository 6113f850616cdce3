#pragma once

#include <string>

namespace polykernel {

enum class Verdict { Yes, No, Unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

inline Verdict both(Verdict a, Verdict b) {
  if (a == Verdict::No || b == Verdict::No) return Verdict::No;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Yes;
}

inline Verdict negate(Verdict v) {
  if (v == Verdict::Yes) return Verdict::No;
  if (v == Verdict::No) return Verdict::Yes;
  return Verdict::Unknown;
}

}  // namespace polykernel
