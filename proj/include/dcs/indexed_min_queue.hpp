#pragma once

#include <cassert>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace dcs {

// Indexed min structures over keys 0..n-1 with arbitrary key updates
// (peeling changes degrees in both directions when weights are signed).
// Minimum is by (key, id), so equal keys pop in ascending id order.
// SegmentTreeMinQueue is the reference backend; BinaryHeapMinQueue is a
// drop-in alternative with the same interface.

class SegmentTreeMinQueue {
 public:
  explicit SegmentTreeMinQueue(std::span<const double> keys)
      : n_(keys.size()), key_(keys.begin(), keys.end()), active_(n_, true), size_(n_) {
    leaf_ = 1;
    while (leaf_ < n_) leaf_ <<= 1;
    tree_.assign(2 * leaf_, -1);
    for (std::size_t i = 0; i < n_; ++i) tree_[leaf_ + i] = static_cast<int>(i);
    for (std::size_t i = leaf_ - 1; i >= 1; --i) pull(i);
  }

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }
  bool active(int i) const { return active_[i]; }
  double key(int i) const { return key_[i]; }

  // Argmin over active ids; -1 when empty.
  int top() const { return tree_[1]; }

  void update(int i, double new_key) {
    assert(active_[i]);
    key_[i] = new_key;
    sift(i);
  }

  void remove(int i) {
    assert(active_[i]);
    active_[i] = false;
    --size_;
    sift(i);
  }

 private:
  int better(int a, int b) const {
    if (a < 0) return b;
    if (b < 0) return a;
    if (key_[a] != key_[b]) return key_[a] < key_[b] ? a : b;
    return a < b ? a : b;
  }

  void pull(std::size_t node) { tree_[node] = better(tree_[2 * node], tree_[2 * node + 1]); }

  void sift(int i) {
    std::size_t node = leaf_ + static_cast<std::size_t>(i);
    tree_[node] = active_[i] ? i : -1;
    for (node >>= 1; node >= 1; node >>= 1) pull(node);
  }

  std::size_t n_;
  std::size_t leaf_;
  std::vector<double> key_;
  std::vector<bool> active_;
  std::vector<int> tree_;
  std::size_t size_;
};

class BinaryHeapMinQueue {
 public:
  explicit BinaryHeapMinQueue(std::span<const double> keys)
      : key_(keys.begin(), keys.end()), pos_(keys.size()), heap_(keys.size()) {
    for (std::size_t i = 0; i < heap_.size(); ++i) {
      heap_[i] = static_cast<int>(i);
      pos_[i] = static_cast<int>(i);
    }
    for (std::size_t i = heap_.size(); i-- > 0;) sift_down(i);
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool active(int i) const { return pos_[i] >= 0; }
  double key(int i) const { return key_[i]; }

  int top() const { return heap_.empty() ? -1 : heap_[0]; }

  void update(int i, double new_key) {
    assert(active(i));
    key_[i] = new_key;
    if (!sift_up(pos_[i])) sift_down(pos_[i]);
  }

  void remove(int i) {
    assert(active(i));
    std::size_t at = static_cast<std::size_t>(pos_[i]);
    pos_[i] = -1;
    int last = heap_.back();
    heap_.pop_back();
    if (at < heap_.size()) {
      heap_[at] = last;
      pos_[last] = static_cast<int>(at);
      if (!sift_up(at)) sift_down(at);
    }
  }

 private:
  bool less(int a, int b) const {
    if (key_[a] != key_[b]) return key_[a] < key_[b];
    return a < b;
  }

  bool sift_up(std::size_t at) {
    bool moved = false;
    while (at > 0) {
      std::size_t parent = (at - 1) / 2;
      if (!less(heap_[at], heap_[parent])) break;
      swap_at(at, parent);
      at = parent;
      moved = true;
    }
    return moved;
  }

  void sift_down(std::size_t at) {
    for (;;) {
      std::size_t best = at;
      std::size_t l = 2 * at + 1, r = 2 * at + 2;
      if (l < heap_.size() && less(heap_[l], heap_[best])) best = l;
      if (r < heap_.size() && less(heap_[r], heap_[best])) best = r;
      if (best == at) return;
      swap_at(at, best);
      at = best;
    }
  }

  void swap_at(std::size_t a, std::size_t b) {
    std::swap(heap_[a], heap_[b]);
    pos_[heap_[a]] = static_cast<int>(a);
    pos_[heap_[b]] = static_cast<int>(b);
  }

  std::vector<double> key_;
  std::vector<int> pos_;
  std::vector<int> heap_;
};

}  // namespace dcs
