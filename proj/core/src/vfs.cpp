#include "weirdfind/vfs.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace weirdfind::vfs {

std::string_view to_string(FsStatus status) {
  switch (status) {
    case FsStatus::Ok: return "ok";
    case FsStatus::MissingParent: return "missing parent directory";
    case FsStatus::AlreadyExists: return "file exists";
    case FsStatus::NotADirectory: return "not a directory";
    case FsStatus::NameTooLong: return "file name too long";
    case FsStatus::IsADirectory: return "is a directory";
    case FsStatus::NotFound: return "no such file or directory";
    case FsStatus::DirNotEmpty: return "directory not empty";
    case FsStatus::InvalidPath: return "invalid path";
    case FsStatus::Unsupported: return "unsupported path";
  }
  return "unknown";
}

Filesystem::Filesystem() : root_(std::make_shared<Node>(NodeKind::Dir)) {}

Filesystem::Split Filesystem::split_path(std::string_view path) {
  Split out;
  if (path.empty() || path.find('\0') != std::string_view::npos) {
    out.status = FsStatus::InvalidPath;
    return out;
  }
  if (path.front() == '/') {
    out.status = FsStatus::Unsupported;
    return out;
  }
  std::size_t pos = 0;
  while (pos <= path.size()) {
    std::size_t slash = path.find('/', pos);
    if (slash == std::string_view::npos) slash = path.size();
    std::string_view comp = path.substr(pos, slash - pos);
    pos = slash + 1;
    if (comp.empty() || comp == ".") continue;
    if (comp == "..") {
      out.status = FsStatus::Unsupported;
      return out;
    }
    if (comp.size() > kNameMax) {
      out.status = FsStatus::NameTooLong;
      return out;
    }
    out.components.push_back(comp);
  }
  return out;
}

FsStatus Filesystem::check_name(std::string_view name) {
  if (name.empty() || name == "." || name == ".." || name.find('/') != std::string_view::npos ||
      name.find('\0') != std::string_view::npos) {
    return FsStatus::InvalidPath;
  }
  if (name.size() > kNameMax) return FsStatus::NameTooLong;
  return FsStatus::Ok;
}

Node::Entry* Filesystem::find_entry(Node& dir, std::string_view name) {
  for (auto& e : dir.entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const Node::Entry* Filesystem::find_entry(const Node& dir, std::string_view name) {
  for (const auto& e : dir.entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

NodePtr Filesystem::insert(Node& dir, std::string_view name, NodeKind kind) {
  // Every mutation funnels through here; the name invariants are hard errors.
  if (check_name(name) != FsStatus::Ok || find_entry(dir, name) != nullptr || !dir.is_dir()) {
    throw std::logic_error("vfs: invalid entry insertion");
  }
  auto node = std::make_shared<Node>(kind);
  node->parent_ = &dir;
  dir.entries_.push_back(Node::Entry{std::string(name), next_seq_++, node});
  return node;
}

Filesystem::ParentRef Filesystem::resolve_parent(const NodePtr& base, std::string_view path) const {
  ParentRef out;
  Split split = split_path(path);
  if (split.status != FsStatus::Ok) {
    out.status = split.status;
    return out;
  }
  if (!base || !base->is_dir() || !base->attached()) {
    out.status = FsStatus::NotFound;
    return out;
  }
  NodePtr cur = base;
  if (split.components.empty()) {
    out.dir = cur;
    return out;
  }
  for (std::size_t i = 0; i + 1 < split.components.size(); ++i) {
    const Node::Entry* e = find_entry(*cur, split.components[i]);
    if (e == nullptr) {
      out.status = FsStatus::MissingParent;
      return out;
    }
    if (!e->node->is_dir()) {
      out.status = FsStatus::NotADirectory;
      return out;
    }
    cur = e->node;
  }
  out.dir = cur;
  out.leaf = split.components.back();
  return out;
}

FsResult<NodePtr> Filesystem::lookup(const NodePtr& base, std::string_view path) const {
  ParentRef ref = resolve_parent(base, path);
  if (ref.status == FsStatus::MissingParent) return {FsStatus::NotFound, nullptr};
  if (ref.status != FsStatus::Ok) return {ref.status, nullptr};
  if (ref.leaf.empty()) return {FsStatus::Ok, ref.dir};
  const Node::Entry* e = find_entry(*ref.dir, ref.leaf);
  if (e == nullptr) return {FsStatus::NotFound, nullptr};
  return {FsStatus::Ok, e->node};
}

FsStatus Filesystem::mkdir(const NodePtr& base, std::string_view path, bool parents) {
  Split split = split_path(path);
  if (split.status != FsStatus::Ok) return split.status;
  if (!base || !base->is_dir() || !base->attached()) return FsStatus::NotFound;
  if (split.components.empty()) return parents ? FsStatus::Ok : FsStatus::AlreadyExists;

  NodePtr cur = base;
  for (std::size_t i = 0; i < split.components.size(); ++i) {
    const bool last = i + 1 == split.components.size();
    std::string_view comp = split.components[i];
    Node::Entry* e = find_entry(*cur, comp);
    if (e != nullptr) {
      if (!e->node->is_dir()) return last && !parents ? FsStatus::AlreadyExists : FsStatus::NotADirectory;
      if (last && !parents) return FsStatus::AlreadyExists;
      cur = e->node;
      continue;
    }
    if (!last && !parents) return FsStatus::MissingParent;
    cur = insert(*cur, comp, NodeKind::Dir);
  }
  return FsStatus::Ok;
}

FsResult<NodePtr> Filesystem::open_truncate(const NodePtr& base, std::string_view path) {
  ParentRef ref = resolve_parent(base, path);
  if (ref.status != FsStatus::Ok) return {ref.status, nullptr};
  if (ref.leaf.empty()) return {FsStatus::IsADirectory, nullptr};
  Node::Entry* e = find_entry(*ref.dir, ref.leaf);
  if (e != nullptr) {
    if (e->node->is_dir()) return {FsStatus::IsADirectory, nullptr};
    e->node->content_.clear();
    return {FsStatus::Ok, e->node};
  }
  return {FsStatus::Ok, insert(*ref.dir, ref.leaf, NodeKind::File)};
}

void Filesystem::append(const NodePtr& file, std::string_view bytes) {
  assert(file && file->is_file());
  file->content_.append(bytes);
}

std::string Filesystem::read_at(const NodePtr& file, std::size_t offset) {
  if (!file || offset >= file->content_.size()) return {};
  return file->content_.substr(offset);
}

FsStatus Filesystem::write(const NodePtr& base, std::string_view path, std::string_view bytes,
                           WriteMode mode) {
  if (mode == WriteMode::TruncateCreate) {
    FsResult<NodePtr> f = open_truncate(base, path);
    if (!f.ok()) return f.status;
    append(f.value, bytes);
    return FsStatus::Ok;
  }
  ParentRef ref = resolve_parent(base, path);
  if (ref.status != FsStatus::Ok) return ref.status;
  if (ref.leaf.empty()) return FsStatus::IsADirectory;
  Node::Entry* e = find_entry(*ref.dir, ref.leaf);
  NodePtr file;
  if (e == nullptr) {
    file = insert(*ref.dir, ref.leaf, NodeKind::File);
  } else if (e->node->is_dir()) {
    return FsStatus::IsADirectory;
  } else {
    file = e->node;
  }
  append(file, bytes);
  return FsStatus::Ok;
}

FsResult<std::string> Filesystem::read_at(const NodePtr& base, std::string_view path,
                                          std::size_t offset) const {
  FsResult<NodePtr> f = lookup(base, path);
  if (!f.ok()) return {f.status, {}};
  if (f.value->is_dir()) return {FsStatus::IsADirectory, {}};
  return {FsStatus::Ok, read_at(f.value, offset)};
}

FsStatus Filesystem::remove_child(const NodePtr& parent, std::string_view name) {
  if (!parent || !parent->is_dir()) return FsStatus::NotFound;
  auto it = std::find_if(parent->entries_.begin(), parent->entries_.end(),
                         [&](const Node::Entry& e) { return e.name == name; });
  if (it == parent->entries_.end()) return FsStatus::NotFound;
  if (it->node->is_dir() && !it->node->entries_.empty()) return FsStatus::DirNotEmpty;
  it->node->attached_ = false;
  it->node->parent_ = nullptr;
  parent->entries_.erase(it);
  return FsStatus::Ok;
}

FsStatus Filesystem::remove(const NodePtr& base, std::string_view path) {
  ParentRef ref = resolve_parent(base, path);
  if (ref.status == FsStatus::MissingParent) return FsStatus::NotFound;
  if (ref.status != FsStatus::Ok) return ref.status;
  if (ref.leaf.empty()) return FsStatus::InvalidPath;
  return remove_child(ref.dir, ref.leaf);
}

std::optional<Stat> Filesystem::stat(const NodePtr& base, std::string_view path) const {
  FsResult<NodePtr> f = lookup(base, path);
  if (!f.ok()) return std::nullopt;
  if (f.value->is_dir()) return Stat{NodeKind::Dir, std::nullopt};
  return Stat{NodeKind::File, f.value->size()};
}

std::vector<std::string> Filesystem::children(const NodePtr& dir) const {
  std::vector<std::string> names;
  if (!dir || !dir->is_dir()) return names;
  names.reserve(dir->entries_.size());
  for (const auto& e : dir->entries_) names.push_back(e.name);
  return names;
}

std::optional<ChildEntry> Filesystem::next_child(const NodePtr& dir, std::uint64_t after_seq) const {
  if (!dir || !dir->is_dir()) return std::nullopt;
  const auto& entries = dir->entries_;
  auto it = std::upper_bound(entries.begin(), entries.end(), after_seq,
                             [](std::uint64_t seq, const Node::Entry& e) { return seq < e.seq; });
  if (it == entries.end()) return std::nullopt;
  return ChildEntry{it->name, it->seq, it->node};
}

std::string Filesystem::path_of(const Node& node) const {
  if (&node == root_.get()) return ".";
  std::vector<const std::string*> names;
  const Node* cur = &node;
  while (cur != root_.get()) {
    const Node* parent = cur->parent_;
    if (parent == nullptr) return "?";
    const std::string* name = nullptr;
    for (const auto& e : parent->entries_) {
      if (e.node.get() == cur) {
        name = &e.name;
        break;
      }
    }
    if (name == nullptr) return "?";
    names.push_back(name);
    cur = parent;
  }
  std::string out = ".";
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    out += '/';
    out += **it;
  }
  return out;
}

namespace {

void dump_line(const std::string& name, const Node& node, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  if (node.is_dir()) {
    out += "D " + name + "/\n";
  } else {
    out += "F " + name + " " + std::to_string(node.size()) + "B\n";
  }
}

}  // namespace

std::string Filesystem::dump() const {
  std::string out;
  struct Item {
    std::string name;
    const Node* node;
    int depth;
  };
  std::vector<Item> stack{{".", root_.get(), 0}};
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    dump_line(item.name, *item.node, item.depth, out);
    const auto& entries = item.node->entries_;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
      stack.push_back({it->name, it->node.get(), item.depth + 1});
    }
  }
  return out;
}

}  // namespace weirdfind::vfs
