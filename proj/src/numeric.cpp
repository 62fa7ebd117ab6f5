#include "gausstv/numeric.hpp"

#include <string>

#include "gausstv/error.hpp"

namespace gausstv {

void Deadline::check(std::string_view where) const {
  if (expired()) {
    throw Error(ErrorKind::DeadlineExceeded,
                "time limit reached during " + std::string(where));
  }
}

}  // namespace gausstv
