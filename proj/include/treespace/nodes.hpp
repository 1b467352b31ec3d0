#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "treespace/errors.hpp"

namespace treespace {

// The two tree shapes the library works on: the rooted infinite binary tree
// (child indices 0/1) and the countably branching tree (child indices in N).
enum class TreeKind { binary, countable };

inline const char* kind_name(TreeKind k) {
    return k == TreeKind::binary ? "binary" : "countable";
}

using Word = std::vector<std::uint32_t>;

// A tree node, identified by the word of child indices from the root.
// The empty word is the root.
struct NodeId {
    Word word;

    NodeId() = default;
    explicit NodeId(Word w) : word(std::move(w)) {}

    std::size_t depth() const { return word.size(); }
    bool is_root() const { return word.empty(); }

    NodeId parent() const {
        require(!is_root(), "root has no parent");
        Word w(word.begin(), word.end() - 1);
        return NodeId(std::move(w));
    }

    NodeId child(std::uint32_t i) const {
        Word w = word;
        w.push_back(i);
        return NodeId(std::move(w));
    }

    // First k letters.
    NodeId prefix(std::size_t k) const {
        Word w(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
        return NodeId(std::move(w));
    }

    // Concatenation: this node's word followed by s's word.
    NodeId concat(const NodeId& s) const {
        Word w = word;
        w.insert(w.end(), s.word.begin(), s.word.end());
        return NodeId(std::move(w));
    }

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline NodeId root() { return NodeId{}; }

inline bool is_prefix_of(const NodeId& a, const NodeId& b) {
    if (a.word.size() > b.word.size()) return false;
    return std::equal(a.word.begin(), a.word.end(), b.word.begin());
}

enum class Order { less, equal, greater, incomparable };

// The prefix partial order on tree nodes.
inline Order compare(const NodeId& a, const NodeId& b) {
    if (a == b) return Order::equal;
    if (is_prefix_of(a, b)) return Order::less;
    if (is_prefix_of(b, a)) return Order::greater;
    return Order::incomparable;
}

inline bool comparable(const NodeId& a, const NodeId& b) {
    return compare(a, b) != Order::incomparable;
}

// Strict breadth-first order: by depth, then lexicographically within a
// level.  "Lexicographically least admissible node" always means least in
// this order; it is what makes every construction deterministic.
inline bool bfs_less(const NodeId& a, const NodeId& b) {
    if (a.depth() != b.depth()) return a.depth() < b.depth();
    return a.word < b.word;
}

inline bool valid_for_kind(const NodeId& n, TreeKind k) {
    if (k == TreeKind::countable) return true;
    for (auto c : n.word)
        if (c > 1) return false;
    return true;
}

// Textual syntax: "eps" for the root, bit strings for binary nodes
// ("0110"), dot-separated naturals for countably branching nodes ("3.1.4").
inline std::string format_node(const NodeId& n, TreeKind k) {
    if (n.is_root()) return "eps";
    std::string out;
    if (k == TreeKind::binary) {
        for (auto c : n.word) out.push_back(c ? '1' : '0');
    } else {
        for (std::size_t i = 0; i < n.word.size(); ++i) {
            if (i) out.push_back('.');
            out += std::to_string(n.word[i]);
        }
    }
    return out;
}

inline NodeId parse_node(const std::string& s, TreeKind k) {
    if (s.empty()) throw parse_error("empty node");
    if (s == "eps") return root();
    Word w;
    if (k == TreeKind::binary) {
        for (char c : s) {
            if (c != '0' && c != '1') throw parse_error("bad binary node: " + s);
            w.push_back(c == '1');
        }
    } else {
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = s.find('.', pos);
            if (next == std::string::npos) next = s.size();
            const std::string part = s.substr(pos, next - pos);
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error("bad countable node: " + s);
            w.push_back(static_cast<std::uint32_t>(std::stoul(part)));
            pos = next + 1;
        }
        if (!s.empty() && s.back() == '.') throw parse_error("bad countable node: " + s);
    }
    return NodeId(std::move(w));
}

// Words (branch prefixes/periods) use the same syntax as nodes.
inline std::string format_word(const Word& w, TreeKind k) { return format_node(NodeId(w), k); }
inline Word parse_word(const std::string& s, TreeKind k) { return parse_node(s, k).word; }

}  // namespace treespace
