#ifndef FLEXRIDE_TYPES_HPP
#define FLEXRIDE_TYPES_HPP

#include <cstdint>

namespace flexride {

using NodeId = std::int64_t;
using Seconds = std::int64_t;

} // namespace flexride

#endif
