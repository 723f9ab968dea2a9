#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace aglstab {

using BigInt = boost::multiprecision::cpp_int;

}  // namespace aglstab
