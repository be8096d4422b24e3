#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gallery.hpp"
#include "model.hpp"
#include "simulate.hpp"

namespace fr1tass {

// --- reference predicates ---------------------------------------------------------------

/// A language given by a membership test. `viable(prefix, max_len)` may be
/// supplied to say whether any word of length <= max_len starting with
/// `prefix` can be a member; it only ever prunes, so leaving it empty is safe.
struct LanguagePredicate {
	std::string name;
	std::function<bool(const Word&)> test;
	std::function<bool(const Word&, std::size_t)> viable;

	bool operator()(const Word& w) const { return test(w); }
};

namespace predicates {

inline LanguagePredicate constant(bool value) {
	return {value ? "everything" : "nothing", [value](const Word&) { return value; },
	        [value](const Word&, std::size_t) { return value; }};
}

/// {a^(2^n) | n >= 0}
inline LanguagePredicate power_of_two_block() {
	return {"power_of_two_block", [](const Word& w) {
		        if (w.empty() || std::any_of(w.begin(), w.end(), [](const Letter& l) { return l != "a"; }))
			        return false;
		        return (w.size() & (w.size() - 1)) == 0;
	        },
	        {}};
}

/// {#w#w | w ∈ {a,b}*}
inline LanguagePredicate marked_copy() {
	return {"marked_copy",
	        [](const Word& w) {
		        const std::size_t half = w.size() / 2;
		        if (w.size() % 2 != 0 || w.empty() || w[0] != "#" || w[half] != "#")
			        return false;
		        for (std::size_t i = 1; i < half; ++i)
			        if ((w[i] != "a" && w[i] != "b") || w[i] != w[i + half])
				        return false;
		        return true;
	        },
	        [](const Word& prefix, std::size_t max_len) {
		        if (prefix.empty())
			        return max_len >= 2;
		        if (prefix[0] != "#")
			        return false;
		        auto second = std::find(prefix.begin() + 1, prefix.end(), Letter("#"));
		        Word left(prefix.begin() + 1, second);
		        Word right = second == prefix.end() ? Word{} : Word(second + 1, prefix.end());
		        auto ab = [](const Letter& l) { return l == "a" || l == "b"; };
		        if (!std::all_of(left.begin(), left.end(), ab) || !std::all_of(right.begin(), right.end(), ab))
			        return false;
		        return right.size() <= left.size() && std::equal(right.begin(), right.end(), left.begin()) &&
		               2 * left.size() + 2 <= max_len;
	        }};
}

/// L_a = {u a v : |u| = |v|, u, v ∈ {a,b}*}
inline LanguagePredicate center_is_a() {
	return {"center_is_a", [](const Word& w) {
		        if (w.size() % 2 == 0)
			        return false;
		        if (std::any_of(w.begin(), w.end(), [](const Letter& l) { return l != "a" && l != "b"; }))
			        return false;
		        return w[w.size() / 2] == "a";
	        },
	        {}};
}

/// L_ab = {w : |w|_b <= |w|_a <= |w|_b + 1}
inline LanguagePredicate balanced_ab() {
	return {"balanced_ab", [](const Word& w) {
		        std::size_t na = 0, nb = 0;
		        for (const auto& l : w) {
			        if (l == "a")
				        ++na;
			        else if (l == "b")
				        ++nb;
			        else
				        return false;
		        }
		        return nb <= na && na <= nb + 1;
	        },
	        {}};
}

inline LanguagePredicate palindrome() {
	return {"palindrome", [](const Word& w) { return std::equal(w.begin(), w.begin() + w.size() / 2, w.rbegin()); }, {}};
}

namespace detail {

struct PcpSegments {
	std::vector<Letter> indices, left, right; // letters with the overline removed
	bool complete;                             // all three separators seen
};

/// Splits `# k̄+ # x̄* # x̄*` (or a prefix of it); nullopt if the shape is violated.
inline std::optional<PcpSegments> pcp_segments(const PcpInstance& p, const Word& w, bool allow_prefix) {
	std::set<Letter> index_names, base(p.base_alphabet.begin(), p.base_alphabet.end());
	for (std::size_t i = 1; i <= p.size(); ++i)
		index_names.insert(pcp::index_letter(i));
	auto strip = [](const Letter& l) -> std::optional<Letter> {
		if (l.size() < 2 || l.back() != '^')
			return std::nullopt;
		return l.substr(0, l.size() - 1);
	};
	PcpSegments seg{{}, {}, {}, false};
	int separators = 0;
	for (const auto& l : w) {
		if (l == pcp::separator()) {
			if (separators == 3 || (separators == 1 && seg.indices.empty()))
				return std::nullopt;
			++separators;
			continue;
		}
		auto bare = strip(l);
		if (separators == 0 || !bare)
			return std::nullopt;
		if (separators == 1) {
			if (!index_names.count(*bare))
				return std::nullopt;
			seg.indices.push_back(*bare);
		} else {
			if (!base.count(*bare))
				return std::nullopt;
			(separators == 2 ? seg.left : seg.right).push_back(*bare);
		}
	}
	seg.complete = separators == 3;
	if (!seg.complete && !allow_prefix)
		return std::nullopt;
	return seg;
}

} // namespace detail

/// Encodings `# k̄1..k̄l # ū_k1..ū_kl # v̄_k1..v̄_kl` of solutions of `p`.
inline LanguagePredicate pcp_solution_encoding(const PcpInstance& p) {
	return {"pcp_solution_encoding",
	        [p](const Word& w) {
		        auto seg = detail::pcp_segments(p, w, false);
		        if (!seg)
			        return false;
		        Word u, v;
		        for (const auto& k : seg->indices) {
			        std::size_t i = std::stoul(k);
			        u.insert(u.end(), p.u_words[i - 1].begin(), p.u_words[i - 1].end());
			        v.insert(v.end(), p.v_words[i - 1].begin(), p.v_words[i - 1].end());
		        }
		        return seg->left == u && seg->right == v && u == v;
	        },
	        [p](const Word& prefix, std::size_t) { return detail::pcp_segments(p, prefix, true).has_value(); }};
}

/// Full match of `pattern` (std::regex ECMAScript) against the word's letters
/// concatenated; meant for alphabets of single-character letters.
inline LanguagePredicate regular(const std::string& pattern) {
	auto re = std::make_shared<std::regex>(pattern);
	return {"regular(" + pattern + ")", [re](const Word& w) {
		        std::string s;
		        for (const auto& l : w)
			        s += l;
		        return std::regex_match(s, *re);
	        },
	        {}};
}

} // namespace predicates

// --- bounded enumeration ----------------------------------------------------------------------

struct Counterexample {
	Word word;
	bool verdict_a;
	bool verdict_b;
};

namespace detail {

/// What is known about every word starting with a given prefix. During the
/// first sweep the i-th step reads the i-th input letter whatever follows,
/// so getting stuck, or entering an accepting state in AS mode, inside the
/// prefix fixes the outcome (steps and a single sweep included) of every
/// extension.
struct PrefixStatus {
	bool decided = false;
	CompiledMachine::Index state = 0;
	CompiledMachine::Outcome outcome;
};

inline PrefixStatus prefix_root(const CompiledMachine& cm) { return {false, cm.start(), {}}; }

inline PrefixStatus prefix_child(const CompiledMachine& cm, const PrefixStatus& s, CompiledMachine::Index letter,
                                 std::size_t depth) {
	if (s.decided)
		return s;
	const auto& mv = cm.move(s.state, letter);
	PrefixStatus out;
	if (!mv.defined()) {
		out.decided = true;
		out.outcome = {Verdict::RejectedStuck, s.state, depth, 1};
	} else if (cm.mode() == AcceptMode::AS && cm.is_accepting(mv.target)) {
		out.decided = true;
		out.outcome = {Verdict::Accepted, mv.target, depth + 1, 1};
	} else {
		out.state = mv.target;
	}
	return out;
}

inline CompiledMachine::Outcome evaluate(const CompiledMachine& cm, const PrefixStatus& s,
                                         const std::vector<CompiledMachine::Index>& word) {
	if (s.decided)
		return s.outcome;
	try {
		return cm.run(word, cm.default_budget(word.size()));
	} catch (const LimitExceeded&) {
		throw std::logic_error("simulator exceeded its own sweep bound; loop detection is broken");
	}
}

} // namespace detail

/// Accepted Σ-words of length <= max_len in length-lexicographic order, Σ
/// ordered as in the tape alphabet.
inline std::vector<Word> enumerate_accepted(const Machine& m, std::size_t max_len) {
	CompiledMachine cm(m);
	const auto sigma = cm.input_letters();
	std::vector<Word> out;
	std::vector<CompiledMachine::Index> word;
	std::function<void(const detail::PrefixStatus&, std::size_t)> dfs = [&](const detail::PrefixStatus& s,
	                                                                        std::size_t length) {
		if (word.size() == length) {
			if (detail::evaluate(cm, s, word).verdict == Verdict::Accepted)
				out.push_back(cm.decode(word));
			return;
		}
		if (s.decided && s.outcome.verdict != Verdict::Accepted)
			return;
		for (auto a : sigma) {
			auto child = detail::prefix_child(cm, s, a, word.size());
			word.push_back(a);
			dfs(child, length);
			word.pop_back();
		}
	};
	for (std::size_t length = 0; length <= max_len; ++length)
		dfs(detail::prefix_root(cm), length);
	return out;
}

/// The length-lex smallest word with min_len <= |w| <= max_len on which the
/// machines disagree, if any.
inline std::optional<Counterexample> equivalent_up_to(const Machine& a, const Machine& b, std::size_t max_len,
                                                      std::size_t min_len = 0) {
	detail::require_same_input(a, b);
	CompiledMachine ca(a), cb(b);
	const auto sigma = ca.input_letters();
	// Both compiled forms order Σ by their own tape order; enumerate in a's.
	std::vector<CompiledMachine::Index> to_b;
	for (auto x : sigma)
		to_b.push_back(cb.encode({ca.letter_name(x)})[0]);

	std::vector<CompiledMachine::Index> wa, wb;
	std::optional<Counterexample> found;
	std::function<void(const detail::PrefixStatus&, const detail::PrefixStatus&, std::size_t)> dfs =
	    [&](const detail::PrefixStatus& sa, const detail::PrefixStatus& sb, std::size_t length) {
		    if (found)
			    return;
		    if (wa.size() == length) {
			    bool va = detail::evaluate(ca, sa, wa).verdict == Verdict::Accepted;
			    bool vb = detail::evaluate(cb, sb, wb).verdict == Verdict::Accepted;
			    if (va != vb)
				    found = Counterexample{ca.decode(wa), va, vb};
			    return;
		    }
		    if (sa.decided && sb.decided) {
			    bool va = sa.outcome.verdict == Verdict::Accepted;
			    bool vb = sb.outcome.verdict == Verdict::Accepted;
			    if (va != vb) {
				    Word w = ca.decode(wa);
				    w.resize(length, ca.letter_name(sigma.front()));
				    found = Counterexample{w, va, vb};
			    }
			    return;
		    }
		    for (std::size_t i = 0; i < sigma.size() && !found; ++i) {
			    auto ca_child = detail::prefix_child(ca, sa, sigma[i], wa.size());
			    auto cb_child = detail::prefix_child(cb, sb, to_b[i], wb.size());
			    wa.push_back(sigma[i]);
			    wb.push_back(to_b[i]);
			    dfs(ca_child, cb_child, length);
			    wa.pop_back();
			    wb.pop_back();
		    }
	    };
	for (std::size_t length = min_len; length <= max_len && !found; ++length)
		dfs(detail::prefix_root(ca), detail::prefix_root(cb), length);
	return found;
}

/// As equivalent_up_to with the predicate as the second side.
inline std::optional<Counterexample> matches_predicate_up_to(const Machine& m, const LanguagePredicate& p,
                                                             std::size_t max_len, std::size_t min_len = 0) {
	CompiledMachine cm(m);
	const auto sigma = cm.input_letters();
	std::vector<CompiledMachine::Index> word;
	std::optional<Counterexample> found;
	std::function<void(const detail::PrefixStatus&, std::size_t)> dfs = [&](const detail::PrefixStatus& s,
	                                                                        std::size_t length) {
		if (found)
			return;
		if (word.size() == length) {
			bool vm = detail::evaluate(cm, s, word).verdict == Verdict::Accepted;
			Word w = cm.decode(word);
			bool vp = p(w);
			if (vm != vp)
				found = Counterexample{std::move(w), vm, vp};
			return;
		}
		if (s.decided && s.outcome.verdict != Verdict::Accepted && p.viable && !p.viable(cm.decode(word), length))
			return;
		for (std::size_t i = 0; i < sigma.size() && !found; ++i) {
			auto child = detail::prefix_child(cm, s, sigma[i], word.size());
			word.push_back(sigma[i]);
			dfs(child, length);
			word.pop_back();
		}
	};
	for (std::size_t length = min_len; length <= max_len && !found; ++length)
		dfs(detail::prefix_root(cm), length);
	return found;
}

/// Visits the outcome of every Σ-word of length <= max_len. When a prefix
/// already fixes the outcome, `visit(prefix, outcome, true)` stands for the
/// prefix and all its extensions, which share that outcome exactly.
template <class Visit>
void for_each_outcome(const Machine& m, std::size_t max_len, Visit&& visit) {
	CompiledMachine cm(m);
	const auto sigma = cm.input_letters();
	std::vector<CompiledMachine::Index> word;
	std::function<void(const detail::PrefixStatus&)> dfs = [&](const detail::PrefixStatus& s) {
		if (s.decided) {
			visit(cm.decode(word), s.outcome, true);
			return;
		}
		visit(cm.decode(word), detail::evaluate(cm, s, word), false);
		if (word.size() == max_len)
			return;
		for (auto a : sigma) {
			auto child = detail::prefix_child(cm, s, a, word.size());
			word.push_back(a);
			dfs(child);
			word.pop_back();
		}
	};
	dfs(detail::prefix_root(cm));
}

// --- unary machines without auxiliary letters -------------------------------------------------

struct UnaryClass {
	enum class Kind { AsThreshold, EtFinite, EtAll, Empty };
	Kind kind = Kind::Empty;
	std::size_t threshold = 0;        // AsThreshold: accepts a^n for n >= threshold
	std::set<std::size_t> lengths;    // EtFinite
	bool accepts_empty = false;       // AS only: membership of λ

	bool contains(std::size_t n) const {
		switch (kind) {
		case Kind::AsThreshold: return n == 0 ? accepts_empty : n >= threshold;
		case Kind::EtFinite: return lengths.count(n) != 0;
		case Kind::EtAll: return true;
		case Kind::Empty: return n == 0 && accepts_empty;
		}
		return false;
	}
};

inline std::string to_string(const UnaryClass& c) {
	std::string empty = c.accepts_empty ? " +empty" : "";
	switch (c.kind) {
	case UnaryClass::Kind::AsThreshold: return "AS_Threshold(" + std::to_string(c.threshold) + ")" + empty;
	case UnaryClass::Kind::EtAll: return "ET_All";
	case UnaryClass::Kind::Empty: return "Empty" + empty;
	case UnaryClass::Kind::EtFinite: {
		std::string out = "ET_Finite({";
		bool first = true;
		for (auto n : c.lengths) {
			out += (first ? "" : ",") + std::to_string(n);
			first = false;
		}
		return out + "})";
	}
	}
	return "?";
}

/// Exact language of a machine with Σ = Γ = {a}. The tape is always a block
/// of a's, so the run is the walk from the start along the unique
/// a-transitions, and only the number of erasures so far matters.
inline UnaryClass classify_unary_noaux(const Machine& m) {
	if (m.tape_alphabet.size() != 1 || m.input_alphabet.size() != 1 || !m.input_alphabet.count(m.tape_alphabet[0]))
		throw PreconditionError("classify_unary_noaux needs Σ = Γ with a single letter");
	const Letter& a = m.tape_alphabet[0];
	UnaryClass c;

	// Walk until the path ends or closes its loop.
	std::vector<StateId> path{m.start};
	std::vector<std::size_t> erased_before{0}; // erasures before reaching path[i]
	std::unordered_map<StateId, std::size_t> seen{{m.start, 0}};
	std::optional<std::size_t> loop_from;
	for (;;) {
		const auto* t = m.find(path.back(), a);
		if (!t)
			break;
		std::size_t e = erased_before.back() + (t->erases() ? 1 : 0);
		if (m.mode == AcceptMode::AS && m.is_accepting(t->target)) {
			// First accepting visit after at least one step; it needs one
			// letter on the tape beyond those erased earlier.
			c.kind = UnaryClass::Kind::AsThreshold;
			c.threshold = erased_before.back() + 1;
			c.accepts_empty = m.accepts_empty;
			return c;
		}
		if (auto it = seen.find(t->target); it != seen.end()) {
			loop_from = it->second;
			erased_before.push_back(e); // erasures after one full pass, back at the loop entry
			break;
		}
		seen.emplace(t->target, path.size());
		path.push_back(t->target);
		erased_before.push_back(e);
	}

	if (m.mode == AcceptMode::AS) {
		c.kind = UnaryClass::Kind::Empty;
		c.accepts_empty = m.accepts_empty;
		return c;
	}
	if (loop_from && erased_before.back() > erased_before[*loop_from]) {
		c.kind = UnaryClass::Kind::EtAll;
		return c;
	}
	c.kind = UnaryClass::Kind::EtFinite;
	for (std::size_t n = 0; n <= erased_before.back(); ++n)
		c.lengths.insert(n);
	return c;
}

// --- strong equivalence ------------------------------------------------------------------

/// First pair p != q (in state order) whose rows agree on every tape letter,
/// undefined entries included, and which agree on acceptance.
inline std::optional<std::pair<StateId, StateId>> has_strongly_equivalent_states(const Machine& m) {
	std::map<std::pair<bool, std::vector<std::optional<Transition>>>, StateId> rows;
	for (const auto& q : m.states) {
		std::vector<std::optional<Transition>> row;
		for (const auto& l : m.tape_alphabet) {
			const auto* t = m.find(q, l);
			row.push_back(t ? std::optional<Transition>(*t) : std::nullopt);
		}
		auto [it, fresh] = rows.emplace(std::make_pair(m.is_accepting(q), std::move(row)), q);
		if (!fresh)
			return std::pair{it->second, q};
	}
	return std::nullopt;
}

/// Redirects every use of `drop` to `keep` and removes `drop`.
inline Machine merge_states(const Machine& m, const StateId& keep, const StateId& drop) {
	if (!m.has_state(keep) || !m.has_state(drop) || keep == drop)
		throw PreconditionError("merge_states needs two distinct states of the machine");
	Machine out;
	out.input_alphabet = m.input_alphabet;
	out.tape_alphabet = m.tape_alphabet;
	out.mode = m.mode;
	out.accepts_empty = m.accepts_empty;
	out.notes = m.notes;
	auto rename = [&](const StateId& q) { return q == drop ? keep : q; };
	out.start = rename(m.start);
	for (const auto& q : m.states)
		if (q != drop)
			out.add_state(q);
	for (const auto& f : m.accepting)
		out.accepting.insert(rename(f));
	for (const auto& [key, t] : m.transitions)
		if (key.first != drop)
			out.transitions.emplace(key, Transition{rename(t.target), t.write});
	return out;
}

} // namespace fr1tass
