#ifndef DULAC_ONLINE_EVAL_HPP
#define DULAC_ONLINE_EVAL_HPP

#include "dulac/log_poly.hpp"

#include <functional>
#include <map>
#include <vector>

namespace dulac {

// Term c * x^mu * t^nu * prod_i u_i^{q_i} over series leaves u_i.
template <class T>
struct OnlineTerm {
    T coeff;
    int x_pow = 0;
    int t_pow = 0;
    std::vector<int> pows;
};

// Evaluates sum of OnlineTerms order by order when the leaves are only known
// incrementally.  Leaf coefficients are pulled through a callback the first
// time an order is needed; products are memoized, so order k costs O(k) per
// product node.  Leaves must vanish at order 0.
template <class T>
class OnlineEvaluator {
public:
    using Poly = LogPolyT<T>;
    using Leaf = std::function<Poly(int slot, int order)>;

    OnlineEvaluator(int slots, std::vector<OnlineTerm<T>> terms, Leaf leaf)
        : slots_(slots), leaf_(std::move(leaf)) {
        for (auto& term : terms) {
            int node = -1;
            std::vector<int> key(slots_, 0);
            for (int i = 0; i < slots_; ++i)
                for (int q = 0; q < term.pows[i]; ++q) {
                    ++key[i];
                    node = node_for(key, node, i);
                }
            terms_.push_back({std::move(term), node});
        }
    }

    // Coefficient of x^k in the whole sum.  Needs leaf orders <= k - min x_pow.
    Poly coefficient(int k) {
        Poly acc;
        for (const auto& [term, node] : terms_) {
            const int j = k - term.x_pow;
            if (j < 0) continue;
            if (node < 0) {
                if (j == 0) acc += Poly::monomial(term.coeff, term.t_pow);
                continue;
            }
            const Poly& v = value(node, j);
            if (v.is_zero()) continue;
            acc += v * Poly::monomial(term.coeff, term.t_pow);
        }
        return acc;
    }

private:
    struct Node {
        int left = -1;   // product node, or -1 for a leaf
        int slot = -1;   // leaf slot (right factor of a product)
        std::vector<Poly> memo;
    };

    int leaf_node(int slot) {
        auto it = leaves_.find(slot);
        if (it != leaves_.end()) return it->second;
        nodes_.push_back({-1, slot, {}});
        return leaves_[slot] = static_cast<int>(nodes_.size()) - 1;
    }

    // Node for the monomial `key`, built as prev * u_slot.
    int node_for(const std::vector<int>& key, int prev, int slot) {
        auto it = products_.find(key);
        if (it != products_.end()) return it->second;
        int id;
        if (prev < 0) {
            id = leaf_node(slot);
        } else {
            nodes_.push_back({prev, slot, {}});
            id = static_cast<int>(nodes_.size()) - 1;
        }
        return products_[key] = id;
    }

    const Poly& value(int id, int k) {
        while (static_cast<int>(nodes_[id].memo.size()) <= k) {
            const int j = static_cast<int>(nodes_[id].memo.size());
            Poly v;
            if (nodes_[id].left < 0) {
                if (j > 0) v = leaf_(nodes_[id].slot, j);
            } else {
                const int l = nodes_[id].left;
                const int r = leaf_node(nodes_[id].slot);
                // Both factors vanish at order 0.  Fill both memos first so
                // the references below stay valid (l may equal r).
                if (j > 1) {
                    value(l, j - 1);
                    value(r, j - 1);
                }
                for (int i = 1; i < j; ++i) {
                    const Poly& a = nodes_[l].memo[i];
                    if (a.is_zero()) continue;
                    const Poly& b = nodes_[r].memo[j - i];
                    if (!b.is_zero()) v += a * b;
                }
            }
            nodes_[id].memo.push_back(std::move(v));
        }
        return nodes_[id].memo[k];
    }

    int slots_;
    Leaf leaf_;
    std::vector<std::pair<OnlineTerm<T>, int>> terms_;
    std::vector<Node> nodes_;
    std::map<int, int> leaves_;
    std::map<std::vector<int>, int> products_;
};

}  // namespace dulac

#endif  // DULAC_ONLINE_EVAL_HPP
