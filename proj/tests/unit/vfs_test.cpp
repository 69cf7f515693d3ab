#include <gtest/gtest.h>

#include <random>

#include "weirdfind/vfs.hpp"

using namespace weirdfind::vfs;

namespace {

class VfsTest : public ::testing::Test {
 protected:
  Filesystem fs;
  const NodePtr& root() { return fs.root(); }
};

TEST_F(VfsTest, MkdirSingle) {
  EXPECT_EQ(fs.mkdir(root(), "a", false), FsStatus::Ok);
  auto st = fs.stat(root(), "a");
  ASSERT_TRUE(st);
  EXPECT_EQ(st->kind, NodeKind::Dir);
}

TEST_F(VfsTest, MkdirMissingParent) { EXPECT_EQ(fs.mkdir(root(), "a/b", false), FsStatus::MissingParent); }

TEST_F(VfsTest, MkdirParentsBuildsToyChain) {
  EXPECT_EQ(fs.mkdir(root(), "_/ab/aa/aa/_", true), FsStatus::Ok);
  EXPECT_EQ(fs.dump(), "D ./\n  D _/\n    D ab/\n      D aa/\n        D aa/\n          D _/\n");
}

TEST_F(VfsTest, MkdirErrors) {
  ASSERT_EQ(fs.mkdir(root(), "a", false), FsStatus::Ok);
  EXPECT_EQ(fs.mkdir(root(), "a", false), FsStatus::AlreadyExists);
  EXPECT_EQ(fs.mkdir(root(), "a", true), FsStatus::Ok);
  ASSERT_EQ(fs.write(root(), "f", "x", WriteMode::TruncateCreate), FsStatus::Ok);
  EXPECT_EQ(fs.mkdir(root(), "f/g", true), FsStatus::NotADirectory);
  EXPECT_EQ(fs.mkdir(root(), std::string(256, 'n'), false), FsStatus::NameTooLong);
  EXPECT_EQ(fs.mkdir(root(), std::string(255, 'n'), false), FsStatus::Ok);
  EXPECT_EQ(fs.mkdir(root(), "", false), FsStatus::InvalidPath);
  EXPECT_EQ(fs.mkdir(root(), "a/../b", true), FsStatus::Unsupported);
}

TEST_F(VfsTest, DotComponentsAndDoubleSlashes) {
  ASSERT_EQ(fs.mkdir(root(), "./aa", false), FsStatus::Ok);
  EXPECT_EQ(fs.mkdir(root(), "./aa//ab", false), FsStatus::Ok);
  EXPECT_TRUE(fs.stat(root(), "aa/./ab"));
}

TEST_F(VfsTest, WriteTruncateCreate) {
  EXPECT_EQ(fs.write(root(), "s", "", WriteMode::TruncateCreate), FsStatus::Ok);
  EXPECT_EQ(fs.stat(root(), "s")->size, 0u);
}

TEST_F(VfsTest, AppendIotaTwice) {
  const std::string iota("\x2e\x00", 2);
  ASSERT_EQ(fs.write(root(), "s", iota, WriteMode::Append), FsStatus::Ok);
  ASSERT_EQ(fs.write(root(), "s", iota, WriteMode::Append), FsStatus::Ok);
  EXPECT_EQ(fs.read_at(root(), "s", 0).value, iota + iota);
}

TEST_F(VfsTest, TruncateKeepsHandleAndOffset) {
  ASSERT_EQ(fs.write(root(), "s", "abcdef", WriteMode::TruncateCreate), FsStatus::Ok);
  NodePtr handle = fs.lookup(root(), "s").value;
  const std::size_t offset = 2;
  auto t = fs.open_truncate(root(), "s");
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t.value, handle);
  EXPECT_EQ(handle->size(), 0u);
  Filesystem::append(handle, "wxyz");
  EXPECT_EQ(Filesystem::read_at(handle, offset), "yz");
  EXPECT_EQ(fs.read_at(root(), "s", offset).value, "yz");
}

TEST_F(VfsTest, WriteErrors) {
  EXPECT_EQ(fs.write(root(), "d/f", "", WriteMode::TruncateCreate), FsStatus::MissingParent);
  ASSERT_EQ(fs.mkdir(root(), "d", false), FsStatus::Ok);
  EXPECT_EQ(fs.write(root(), "d", "", WriteMode::Append), FsStatus::IsADirectory);
}

TEST_F(VfsTest, ReadAt) {
  const std::string iota("\x2e\x00", 2);
  ASSERT_EQ(fs.write(root(), "s", iota, WriteMode::TruncateCreate), FsStatus::Ok);
  EXPECT_EQ(fs.read_at(root(), "s", 0).value.size(), 2u);
  EXPECT_EQ(fs.read_at(root(), "s", 2).value, "");
  EXPECT_EQ(fs.read_at(root(), "s", 9).value, "");
  EXPECT_EQ(fs.read_at(root(), "nope", 0).status, FsStatus::NotFound);
  ASSERT_EQ(fs.mkdir(root(), "d", false), FsStatus::Ok);
  EXPECT_EQ(fs.read_at(root(), "d", 0).status, FsStatus::IsADirectory);
}

TEST_F(VfsTest, ReadAfterTruncateAndAppend) {
  ASSERT_EQ(fs.write(root(), "s", "12345678", WriteMode::TruncateCreate), FsStatus::Ok);
  ASSERT_EQ(fs.write(root(), "s", "", WriteMode::TruncateCreate), FsStatus::Ok);
  ASSERT_EQ(fs.write(root(), "s", "wxyz", WriteMode::Append), FsStatus::Ok);
  EXPECT_EQ(fs.read_at(root(), "s", 2).value, "yz");
}

TEST_F(VfsTest, Delete) {
  ASSERT_EQ(fs.write(root(), "first", "", WriteMode::TruncateCreate), FsStatus::Ok);
  EXPECT_EQ(fs.remove(root(), "first"), FsStatus::Ok);
  EXPECT_FALSE(fs.stat(root(), "first"));
  ASSERT_EQ(fs.mkdir(root(), "d/e", true), FsStatus::Ok);
  EXPECT_EQ(fs.remove(root(), "d"), FsStatus::DirNotEmpty);
  EXPECT_EQ(fs.remove(root(), "zz"), FsStatus::NotFound);
  const std::string two("\x2e\x00", 2);
  ASSERT_EQ(fs.write(root(), "a", two, WriteMode::TruncateCreate), FsStatus::Ok);
  EXPECT_EQ(fs.remove(root(), "a"), FsStatus::Ok);
}

TEST_F(VfsTest, ChildrenOrder) {
  EXPECT_TRUE(fs.children(root()).empty());
  for (const char* n : {"t1", "t2", "t3"}) ASSERT_EQ(fs.mkdir(root(), n, false), FsStatus::Ok);
  ASSERT_EQ(fs.remove(root(), "t2"), FsStatus::Ok);
  EXPECT_EQ(fs.children(root()), (std::vector<std::string>{"t1", "t3"}));
}

TEST_F(VfsTest, ChildrenSeeEntriesCreatedDuringIteration) {
  ASSERT_EQ(fs.mkdir(root(), "x", false), FsStatus::Ok);
  std::vector<std::string> seen;
  std::uint64_t cursor = 0;
  while (auto c = fs.next_child(root(), cursor)) {
    cursor = c->seq;
    seen.push_back(c->name);
    if (c->name == "x") {
      ASSERT_EQ(fs.mkdir(root(), "x2", false), FsStatus::Ok);
    }
  }
  EXPECT_EQ(seen, (std::vector<std::string>{"x", "x2"}));
  EXPECT_EQ(fs.children(root()), seen);
}

TEST_F(VfsTest, Stat) {
  ASSERT_EQ(fs.write(root(), "pc", "111", WriteMode::TruncateCreate), FsStatus::Ok);
  auto st = fs.stat(root(), "pc");
  ASSERT_TRUE(st);
  EXPECT_EQ(st->kind, NodeKind::File);
  EXPECT_EQ(st->size, 3u);
  EXPECT_FALSE(fs.stat(root(), "a"));
  ASSERT_EQ(fs.mkdir(root(), "d", false), FsStatus::Ok);
  EXPECT_EQ(fs.stat(root(), "d")->kind, NodeKind::Dir);
  EXPECT_FALSE(fs.stat(root(), "d")->size);
}

TEST_F(VfsTest, PathOfAndDump) {
  ASSERT_EQ(fs.mkdir(root(), "a/b", true), FsStatus::Ok);
  ASSERT_EQ(fs.write(root(), "a/f", "xyz", WriteMode::TruncateCreate), FsStatus::Ok);
  EXPECT_EQ(fs.path_of(*fs.lookup(root(), "a/b").value), "./a/b");
  EXPECT_EQ(fs.path_of(*root()), ".");
  EXPECT_EQ(fs.dump(), "D ./\n  D a/\n    D b/\n    F f 3B\n");
}

// Creation-order law over random interleavings of creates and deletes.
TEST(VfsProperty, CreationOrderLaw) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    Filesystem fs;
    std::vector<std::string> model;
    int next = 0;
    for (int op = 0; op < 40; ++op) {
      if (model.empty() || rng() % 3 != 0) {
        const std::string name = "n" + std::to_string(next++);
        if (rng() % 2) {
          ASSERT_EQ(fs.mkdir(fs.root(), name, false), FsStatus::Ok);
        } else {
          ASSERT_EQ(fs.write(fs.root(), name, "", WriteMode::TruncateCreate), FsStatus::Ok);
        }
        model.push_back(name);
      } else {
        const std::size_t i = rng() % model.size();
        ASSERT_EQ(fs.remove(fs.root(), model[i]), FsStatus::Ok);
        model.erase(model.begin() + static_cast<std::ptrdiff_t>(i));
      }
      ASSERT_EQ(fs.children(fs.root()), model);
    }
  }
}

TEST(VfsProperty, TruncationPreservesReaderOffsets) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    Filesystem fs;
    std::string before(rng() % 16, 'p');
    ASSERT_EQ(fs.write(fs.root(), "f", before, WriteMode::TruncateCreate), FsStatus::Ok);
    NodePtr h = fs.lookup(fs.root(), "f").value;
    const std::size_t k = rng() % 20;
    ASSERT_EQ(fs.write(fs.root(), "f", "", WriteMode::TruncateCreate), FsStatus::Ok);
    std::string added;
    for (std::size_t i = rng() % 24; i > 0; --i) added += static_cast<char>('a' + rng() % 26);
    ASSERT_EQ(fs.write(fs.root(), "f", added, WriteMode::Append), FsStatus::Ok);
    EXPECT_EQ(Filesystem::read_at(h, k), k < added.size() ? added.substr(k) : "");
  }
}

TEST(VfsProperty, MkdirParentsIdempotent) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    std::string path;
    for (std::size_t i = 1 + rng() % 6; i > 0; --i) path += (path.empty() ? "" : "/") + std::string(1, 'a' + rng() % 3);
    Filesystem once;
    Filesystem twice;
    ASSERT_EQ(once.mkdir(once.root(), "a/b", true), FsStatus::Ok);
    ASSERT_EQ(twice.mkdir(twice.root(), "a/b", true), FsStatus::Ok);
    ASSERT_EQ(once.mkdir(once.root(), path, true), FsStatus::Ok);
    ASSERT_EQ(twice.mkdir(twice.root(), path, true), FsStatus::Ok);
    ASSERT_EQ(twice.mkdir(twice.root(), path, true), FsStatus::Ok);
    EXPECT_EQ(once.dump(), twice.dump());
  }
}

TEST(VfsProperty, InvalidNamesNeverCreated) {
  Filesystem fs;
  EXPECT_EQ(fs.mkdir(fs.root(), std::string("a\0b", 3), false), FsStatus::InvalidPath);
  EXPECT_EQ(fs.write(fs.root(), std::string(300, 'z'), "", WriteMode::TruncateCreate), FsStatus::NameTooLong);
  EXPECT_TRUE(fs.children(fs.root()).empty());
}

}  // namespace
