#pragma once

// In-memory filesystem used as the world state of emulated commands.
//
// Directories keep their entries in creation order and hand out a sequence
// number per entry, so a traversal can resume "after the last entry I saw"
// and still observe entries created behind its back. Files are flat byte
// buffers; truncation happens in place, so a reader holding a node handle
// and an offset keeps reading from the same object.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace weirdfind::vfs {

inline constexpr std::size_t kNameMax = 255;

enum class NodeKind : std::uint8_t { Dir, File };

enum class FsStatus : std::uint8_t {
  Ok,
  MissingParent,
  AlreadyExists,
  NotADirectory,
  NameTooLong,
  IsADirectory,
  NotFound,
  DirNotEmpty,
  InvalidPath,  // empty path, NUL byte, or an operation on "." itself
  Unsupported,  // ".." components or absolute paths
};

std::string_view to_string(FsStatus status);

class Filesystem;
class Node;
using NodePtr = std::shared_ptr<Node>;

class Node {
 public:
  explicit Node(NodeKind kind) : kind_(kind) {}

  NodeKind kind() const { return kind_; }
  bool is_dir() const { return kind_ == NodeKind::Dir; }
  bool is_file() const { return kind_ == NodeKind::File; }

  // False once the node has been removed from its parent.
  bool attached() const { return attached_; }

  const std::string& content() const { return content_; }
  std::size_t size() const { return content_.size(); }
  std::size_t entry_count() const { return entries_.size(); }

 private:
  friend class Filesystem;

  struct Entry {
    std::string name;
    std::uint64_t seq;
    NodePtr node;
  };

  NodeKind kind_;
  std::vector<Entry> entries_;  // ascending seq == creation order
  std::string content_;
  Node* parent_ = nullptr;
  bool attached_ = true;
};

template <typename T>
struct FsResult {
  FsStatus status = FsStatus::Ok;
  T value{};

  bool ok() const { return status == FsStatus::Ok; }
};

enum class WriteMode : std::uint8_t { TruncateCreate, Append };

struct Stat {
  NodeKind kind;
  std::optional<std::size_t> size;  // unset for directories
};

struct ChildEntry {
  std::string name;
  std::uint64_t seq;
  NodePtr node;
};

class Filesystem {
 public:
  Filesystem();
  Filesystem(const Filesystem&) = delete;
  Filesystem& operator=(const Filesystem&) = delete;
  Filesystem(Filesystem&&) noexcept = default;
  Filesystem& operator=(Filesystem&&) noexcept = default;

  const NodePtr& root() const { return root_; }

  FsStatus mkdir(const NodePtr& base, std::string_view path, bool parents);
  FsStatus write(const NodePtr& base, std::string_view path, std::string_view bytes, WriteMode mode);
  FsResult<std::string> read_at(const NodePtr& base, std::string_view path, std::size_t offset) const;
  FsStatus remove(const NodePtr& base, std::string_view path);
  std::optional<Stat> stat(const NodePtr& base, std::string_view path) const;

  // Snapshot of entry names in creation order.
  std::vector<std::string> children(const NodePtr& dir) const;

  // First entry of `dir` whose sequence number is greater than `after_seq`.
  // Pass 0 to start from the beginning.
  std::optional<ChildEntry> next_child(const NodePtr& dir, std::uint64_t after_seq) const;

  FsResult<NodePtr> lookup(const NodePtr& base, std::string_view path) const;

  // Creates the file if missing, truncates it in place otherwise.
  FsResult<NodePtr> open_truncate(const NodePtr& base, std::string_view path);
  static void append(const NodePtr& file, std::string_view bytes);
  static std::string read_at(const NodePtr& file, std::size_t offset);

  // Removes `name` from `parent`; directories must be empty.
  FsStatus remove_child(const NodePtr& parent, std::string_view name);

  // "." for the root, "./a/b" otherwise; "?" for detached nodes.
  std::string path_of(const Node& node) const;

  // One line per node: `D name/` or `F name <size>B`, two spaces per level.
  std::string dump() const;

 private:
  struct Split {
    FsStatus status = FsStatus::Ok;
    std::vector<std::string_view> components;
  };
  static Split split_path(std::string_view path);
  static FsStatus check_name(std::string_view name);

  // Resolves every component but the last; `leaf` is empty when the path
  // names the base directory itself.
  struct ParentRef {
    FsStatus status = FsStatus::Ok;
    NodePtr dir;
    std::string_view leaf;
  };
  ParentRef resolve_parent(const NodePtr& base, std::string_view path) const;

  static Node::Entry* find_entry(Node& dir, std::string_view name);
  static const Node::Entry* find_entry(const Node& dir, std::string_view name);
  NodePtr insert(Node& dir, std::string_view name, NodeKind kind);

  NodePtr root_;
  std::uint64_t next_seq_ = 1;
};

}  // namespace weirdfind::vfs
