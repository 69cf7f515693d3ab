#pragma once

// Reads the computation state of a tag-backend run back out of the
// filesystem: the path of the unique empty directory under the separator.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weirdfind/encoding.hpp"
#include "weirdfind/vfs.hpp"

namespace weirdfind::compiler {

class InvariantViolated : public std::runtime_error {
 public:
  InvariantViolated(const std::string& path, const std::string& why)
      : std::runtime_error("state invariant violated at '" + path + "': " + why), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class FilePolicy : std::uint8_t {
  Ignore,  // regular files are tolerated
  Reject,  // any regular file violates the invariant (cleanness)
};

// Returns e.g. "_/ab/aa/aa/_". The root must hold exactly the separator
// directory, and every directory on the chain at most one subdirectory.
std::string extract_state_path(const vfs::Filesystem& fs, std::string_view separator,
                               FilePolicy files = FilePolicy::Ignore);

// Splits a state path at separator components and decodes every complete
// segment; a trailing partial segment is decoded too when non-empty.
std::vector<machines::Word> decode_state_path(const Encoding& enc, std::string_view state,
                                              std::string_view separator);

}  // namespace weirdfind::compiler
