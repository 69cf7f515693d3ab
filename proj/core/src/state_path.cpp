#include "weirdfind/state_path.hpp"

namespace weirdfind::compiler {

std::string extract_state_path(const vfs::Filesystem& fs, std::string_view separator, FilePolicy files) {
  std::string path;
  vfs::NodePtr cur = fs.root();
  for (;;) {
    vfs::NodePtr next_dir;
    std::string next_name;
    std::uint64_t cursor = 0;
    while (auto child = fs.next_child(cur, cursor)) {
      cursor = child->seq;
      const std::string child_path = path.empty() ? child->name : path + "/" + child->name;
      if (child->node->is_file()) {
        if (files == FilePolicy::Reject) throw InvariantViolated(child_path, "regular file present");
        continue;
      }
      if (next_dir) throw InvariantViolated(path.empty() ? "." : path, "more than one subdirectory");
      next_dir = child->node;
      next_name = child->name;
    }
    if (!next_dir) break;
    if (path.empty() && next_name != separator) {
      throw InvariantViolated(next_name, "expected the separator directory '" + std::string(separator) + "'");
    }
    path = path.empty() ? next_name : path + "/" + next_name;
    cur = next_dir;
  }
  if (path.empty()) throw InvariantViolated(".", "no separator directory");
  return path;
}

std::vector<machines::Word> decode_state_path(const Encoding& enc, std::string_view state,
                                              std::string_view separator) {
  std::vector<machines::Word> words;
  std::string segment;
  bool started = false;
  std::size_t pos = 0;
  while (pos <= state.size()) {
    std::size_t slash = state.find('/', pos);
    if (slash == std::string_view::npos) slash = state.size();
    const std::string_view comp = state.substr(pos, slash - pos);
    pos = slash + 1;
    if (comp == separator) {
      if (started) words.push_back(decode_word(enc, segment));
      started = true;
      segment.clear();
    } else {
      if (!started) throw CompileError(CompileErrc::MalformedEncoding, "state path does not start with the separator");
      segment += '/';
      segment += comp;
    }
  }
  if (!segment.empty()) words.push_back(decode_word(enc, segment));
  return words;
}

}  // namespace weirdfind::compiler
