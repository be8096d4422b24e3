#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "model.hpp"

namespace fr1tass {

namespace detail {

inline Machine make_machine(std::vector<Letter> input, std::vector<Letter> tape, std::vector<StateId> states,
                            StateId start, AcceptMode mode) {
	Machine m;
	m.input_alphabet.insert(input.begin(), input.end());
	m.tape_alphabet = OrderedAlphabet(std::move(tape));
	for (const auto& q : states)
		m.add_state(q);
	m.start = std::move(start);
	m.add_state(m.start);
	m.mode = mode;
	return m;
}

inline constexpr std::nullopt_t erase = std::nullopt;

} // namespace detail

/// {a^(2^n) | n >= 0}: halves the a-block every sweep, with A marking the start.
inline Machine power_of_two() {
	auto m = detail::make_machine({"a"}, {"A", "a"}, {"1", "2", "3", "4", "5"}, "1", AcceptMode::AS);
	m.accepting = {"5"};
	m.set_transition("1", "a", "2", "A");
	m.set_transition("2", "a", "3", detail::erase);
	m.set_transition("2", "A", "5", "A");
	m.set_transition("3", "a", "4", "a");
	m.set_transition("3", "A", "2", "A");
	m.set_transition("4", "a", "3", detail::erase);
	return m;
}

/// {#w#w | w ∈ {a,b}*}: erases matching letter pairs at equal distance from
/// the two separators. The leading # becomes $ to mark the start.
inline Machine marked_copy() {
	auto m = detail::make_machine({"#", "a", "b"}, {"$", "#", "a", "b"},
	                              {"I", "S", "A", "B", "1", "2", "M", "3", "4", "Halt"}, "I", AcceptMode::AS);
	m.accepting = {"Halt"};
	m.set_transition("I", "#", "S", "$");
	m.set_transition("S", "a", "A", detail::erase);
	m.set_transition("S", "b", "B", detail::erase);
	m.set_transition("S", "#", "4", "#");
	for (const char* carry : {"A", "B"}) {
		m.set_transition(carry, "a", carry, "a");
		m.set_transition(carry, "b", carry, "b");
	}
	m.set_transition("A", "#", "1", "#");
	m.set_transition("B", "#", "2", "#");
	m.set_transition("1", "a", "M", detail::erase);
	m.set_transition("2", "b", "M", detail::erase);
	m.set_transition("M", "a", "M", "a");
	m.set_transition("M", "b", "M", "b");
	m.set_transition("M", "$", "3", "$");
	m.set_transition("3", "a", "A", detail::erase);
	m.set_transition("3", "b", "B", detail::erase);
	m.set_transition("3", "#", "4", "#");
	m.set_transition("4", "$", "Halt", "$");
	return m;
}

// --- middle marking -------------------------------------------------------------

/// Letter forms used by center_language(). For every base letter x the order is
///   <x>o^ < <x>o < <x>e^ < <x>e < <x> < x^' < x' < x^ < x
/// where ^ is an overline, ' a prime, <x> the start-of-input copy and the o/e
/// suffix records the parity of the input length.
namespace center {

inline Letter overlined(const Letter& x) { return x + "^"; }
inline Letter primed(const Letter& x) { return x + "'"; }
inline Letter overlined_primed(const Letter& x) { return x + "^'"; }
inline Letter start(const Letter& x) { return "<" + x + ">"; }
inline Letter start_parity(const Letter& x, bool odd) { return start(x) + (odd ? "o" : "e"); }
inline Letter start_parity_overlined(const Letter& x, bool odd) { return start_parity(x, odd) + "^"; }

inline const std::vector<Letter>& bases() {
	static const std::vector<Letter> b{"a", "b"};
	return b;
}

/// True for tape letters that carry no overline.
inline bool is_unoverlined(const Letter& l) { return l.find('^') == Letter::npos; }

} // namespace center

/// L_a = {u a v : |u| = |v|} over {a, b}. The machine first marks the start
/// letter and every odd position, then repeatedly moves one overline from the
/// right half into the left half until no overlined letter follows an
/// unoverlined one. The first unoverlined letter is then the middle letter.
inline Machine center_language() {
	using namespace center;
	std::vector<Letter> tape;
	for (const auto& x : bases()) {
		for (bool odd : {true, false}) {
			tape.push_back(start_parity_overlined(x, odd));
			tape.push_back(start_parity(x, odd));
		}
		tape.push_back(start(x));
		tape.push_back(overlined_primed(x));
		tape.push_back(primed(x));
		tape.push_back(overlined(x));
		tape.push_back(x);
	}
	// init: first letter; odd/even: marking pass; seek/seen: look for an
	// overline after an unoverlined letter; rewind: finish the lap;
	// lift: overline the first unoverlined letter; decide: find the middle.
	auto m = detail::make_machine(bases(), tape, {"init", "odd", "even", "seek", "seen", "rewind", "lift", "decide", "acc"},
	                              "init", AcceptMode::AS);
	m.accepting = {"acc"};

	for (const auto& x : bases()) {
		m.set_transition("init", x, "odd", start(x));
		m.set_transition("odd", x, "even", overlined(x));
		m.set_transition("even", x, "odd", x);
		m.set_transition("odd", start(x), "seen", start_parity(x, true));
		m.set_transition("even", start(x), "seen", start_parity(x, false));

		for (const char* scan : {"seek", "seen"}) {
			const bool seen = std::string_view(scan) == "seen";
			m.set_transition(scan, x, "seen", x);
			m.set_transition(scan, primed(x), "seen", primed(x));
			if (seen)
				m.set_transition(scan, overlined(x), "rewind", primed(x));
			else {
				m.set_transition(scan, overlined(x), "seek", overlined(x));
				m.set_transition(scan, overlined_primed(x), "seek", overlined_primed(x));
			}
			// Back at the start without a move: the marking is final.
			if (x == "a")
				m.set_transition(scan, start_parity(x, true), "acc", start_parity(x, true));
			m.set_transition(scan, start_parity_overlined(x, true), "decide", start_parity_overlined(x, true));
		}

		for (const auto& l : {x, primed(x), overlined(x), overlined_primed(x)})
			m.set_transition("rewind", l, "rewind", l);
		for (bool odd : {true, false}) {
			m.set_transition("rewind", start_parity(x, odd), "seek", start_parity_overlined(x, odd));
			m.set_transition("rewind", start_parity_overlined(x, odd), "lift", start_parity_overlined(x, odd));
		}

		m.set_transition("lift", overlined(x), "lift", overlined(x));
		m.set_transition("lift", overlined_primed(x), "lift", overlined_primed(x));
		m.set_transition("lift", x, "seek", overlined(x));
		m.set_transition("lift", primed(x), "seek", overlined_primed(x));

		m.set_transition("decide", overlined(x), "decide", overlined(x));
		m.set_transition("decide", overlined_primed(x), "decide", overlined_primed(x));
	}
	m.set_transition("decide", "a", "acc", "a");
	m.set_transition("decide", primed("a"), "acc", primed("a"));
	return m;
}

/// Index of the first unoverlined cell of a center_language() tape, if any.
inline std::optional<std::size_t> center_marking_index(const Word& tape) {
	for (std::size_t i = 0; i < tape.size(); ++i)
		if (center::is_unoverlined(tape[i]))
			return i;
	return std::nullopt;
}

/// {w : |w|_b <= |w|_a <= |w|_b + 1} in ET mode without auxiliary letters:
/// erase an a, skip to the next b, erase it, repeat.
inline Machine balance_ab_et() {
	auto m = detail::make_machine({"a", "b"}, {"a", "b"}, {"1", "2"}, "1", AcceptMode::ET);
	m.set_transition("1", "a", "2", detail::erase);
	m.set_transition("1", "b", "1", "b");
	m.set_transition("2", "a", "2", "a");
	m.set_transition("2", "b", "1", detail::erase);
	return m;
}

// --- PCP reduction ----------------------------------------------------------------

struct PcpInstance {
	std::vector<Word> u_words;
	std::vector<Word> v_words;
	std::vector<Letter> base_alphabet;

	std::size_t size() const { return u_words.size(); }
};

namespace pcp {

inline Letter overlined(const Letter& x) { return x + "^"; }
inline Letter index_letter(std::size_t i) { return std::to_string(i); }
inline const Letter& separator() {
	static const Letter s = "#";
	return s;
}
inline const Letter& start_separator() {
	static const Letter s = "#0";
	return s;
}

} // namespace pcp

/// Checks the instance and its generated letter names; throws InstanceError.
inline void check_instance(const PcpInstance& p) {
	if (p.u_words.empty())
		throw InstanceError("PCP instance has no word pairs");
	if (p.u_words.size() != p.v_words.size())
		throw InstanceError("U and V have different lengths");
	std::set<Letter> base(p.base_alphabet.begin(), p.base_alphabet.end());
	if (base.size() != p.base_alphabet.size())
		throw InstanceError("duplicate letter in the instance alphabet");
	std::set<Letter> names{pcp::separator(), pcp::start_separator()};
	auto claim = [&](const Letter& l) {
		if (!is_valid_letter_name(l) || !names.insert(l).second)
			throw InstanceError("letter name '" + l + "' clashes with the reduction's alphabet");
	};
	for (std::size_t i = 1; i <= p.size(); ++i) {
		claim(pcp::index_letter(i));
		claim(pcp::overlined(pcp::index_letter(i)));
	}
	for (const auto& x : p.base_alphabet) {
		claim(x);
		claim(pcp::overlined(x));
	}
	for (const auto* list : {&p.u_words, &p.v_words})
		for (const auto& w : *list) {
			if (w.empty())
				throw InstanceError("PCP words must be nonempty");
			for (const auto& x : w)
				if (!base.count(x))
					throw InstanceError("letter '" + x + "' is not in the instance alphabet");
		}
}

/// Overlined encoding `# k1..kl # u_k1..u_kl # v_k1..v_kl` of a candidate.
inline Word encode_pcp_candidate(const PcpInstance& p, const std::vector<std::size_t>& indices) {
	check_instance(p);
	if (indices.empty())
		throw IndexOutOfRange("a candidate needs at least one index");
	for (auto k : indices)
		if (k < 1 || k > p.size())
			throw IndexOutOfRange("index " + std::to_string(k) + " is outside 1.." + std::to_string(p.size()));
	Word w{pcp::separator()};
	for (auto k : indices)
		w.push_back(pcp::overlined(pcp::index_letter(k)));
	for (const auto* list : {&p.u_words, &p.v_words}) {
		w.push_back(pcp::separator());
		for (auto k : indices)
			for (const auto& x : (*list)[k - 1])
				w.push_back(pcp::overlined(x));
	}
	return w;
}

/// Accepts exactly the encodings of solutions of `p`.
///
/// Lap 1 checks the shape `# k^+ # x^* # x^*` and turns the leading # into #0.
/// Each following lap takes the first overlined index i, removes its overline,
/// and matches u_i against the first overlined letters after the second # and
/// v_i against those after the third #, removing their overlines. Once every
/// index is consumed and no overline is left, the two word segments are
/// compared by erasing one letter from the front of each per lap.
inline Machine pcp_machine(const PcpInstance& p) {
	check_instance(p);
	using pcp::overlined;
	const Letter& hash = pcp::separator();
	const Letter& home = pcp::start_separator();
	const std::size_t n = p.size();

	std::vector<Letter> input{hash};
	std::vector<Letter> tape{home, hash};
	std::vector<Letter> indices;
	for (std::size_t i = 1; i <= n; ++i)
		indices.push_back(pcp::index_letter(i));
	for (const std::vector<Letter>* group : std::initializer_list<const std::vector<Letter>*>{&indices, &p.base_alphabet})
		for (const auto& x : *group) {
			input.push_back(x);
			input.push_back(overlined(x));
			tape.push_back(x);
			tape.push_back(overlined(x));
		}

	auto m = detail::make_machine(input, tape, {"I0", "K0", "K1", "M", "L", "Pk"}, "I0", AcceptMode::AS);
	m.accepting = {"acc"};
	auto keep = [&](const StateId& q, const Letter& a, const StateId& to) { m.set_transition(q, a, to, a); };

	// Lap 1: shape check.
	m.set_transition("I0", hash, "K0", home);
	for (const auto& i : indices) {
		keep("K0", overlined(i), "K1");
		keep("K1", overlined(i), "K1");
	}
	keep("K1", hash, "M");
	for (const auto& x : p.base_alphabet) {
		keep("M", overlined(x), "M");
		keep("L", overlined(x), "L");
	}
	keep("M", hash, "L");
	keep("L", home, "Pk");

	// Index laps.
	for (std::size_t i = 1; i <= n; ++i) {
		const auto& idx = indices[i - 1];
		const std::string tag = std::to_string(i);
		keep("Pk", idx, "Pk");
		m.set_transition("Pk", overlined(idx), "S" + tag, idx);
		for (const auto& j : indices) {
			keep("S" + tag, j, "S" + tag);
			keep("S" + tag, overlined(j), "S" + tag);
		}
		keep("S" + tag, hash, "C" + tag);

		// Match one word letter by letter on the first overlined cells.
		auto chain = [&](const StateId& from, const Word& word, const std::string& prefix, const StateId& done) {
			StateId cur = from;
			for (std::size_t j = 0; j < word.size(); ++j) {
				StateId next = j + 1 == word.size() ? done : prefix + tag + "." + std::to_string(j + 1);
				m.set_transition(cur, overlined(word[j]), next, word[j]);
				cur = next;
			}
		};
		for (const auto& x : p.base_alphabet) {
			keep("C" + tag, x, "C" + tag);
			keep("D" + tag, x, "D" + tag);
			keep("D" + tag, overlined(x), "D" + tag);
			keep("E" + tag, x, "E" + tag);
		}
		chain("C" + tag, p.u_words[i - 1], "U", "D" + tag);
		keep("D" + tag, hash, "E" + tag);
		chain("E" + tag, p.v_words[i - 1], "V", "R");
	}
	for (const auto& x : p.base_alphabet) {
		keep("R", x, "R");
		keep("R", overlined(x), "R");
	}
	keep("R", home, "Pk");

	// All indices consumed: no overline may remain.
	keep("Pk", hash, "VerM");
	for (const auto& x : p.base_alphabet) {
		keep("VerM", x, "VerM");
		keep("VerL", x, "VerL");
	}
	keep("VerM", hash, "VerL");
	keep("VerL", home, "Tk");

	// Segment equality by pairwise erasure.
	for (const auto& i : indices)
		keep("Tk", i, "Tk");
	keep("Tk", hash, "Tm");
	for (const auto& x : p.base_alphabet) {
		const StateId carry = "G." + x;
		const StateId match = "H." + x;
		m.set_transition("Tm", x, carry, detail::erase);
		for (const auto& y : p.base_alphabet) {
			keep(carry, y, carry);
			keep("W", y, "W");
		}
		keep(carry, hash, match);
		m.set_transition(match, x, "W", detail::erase);
	}
	keep("W", home, "Tk");
	keep("Tm", hash, "Z");
	keep("Z", home, "acc");
	return m;
}

/// The running example instance U = (a, ab), V = (aa, b).
inline PcpInstance example_pcp_instance() {
	return PcpInstance{{{"a"}, {"a", "b"}}, {{"a", "a"}, {"b"}}, {"a", "b"}};
}

/// Instance file: `alphabet: a b` then matched `u: ...` / `v: ...` lines.
inline PcpInstance parse_pcp_instance(std::string_view text) {
	PcpInstance p;
	bool have_alphabet = false;
	for (const auto& [line, tokens] : detail::tokenized_lines(text)) {
		std::vector<std::string> args(tokens.begin() + 1, tokens.end());
		if (tokens[0] == "alphabet:") {
			if (have_alphabet)
				throw ParseError(line, std::nullopt, "duplicate 'alphabet:' line");
			have_alphabet = true;
			p.base_alphabet = args;
		} else if (tokens[0] == "u:") {
			p.u_words.push_back(args);
		} else if (tokens[0] == "v:") {
			p.v_words.push_back(args);
		} else {
			throw ParseError(line, std::nullopt, "unexpected directive '" + tokens[0] + "'");
		}
	}
	if (!have_alphabet)
		throw ParseError(1, std::nullopt, "missing 'alphabet:' line");
	check_instance(p);
	return p;
}

inline std::string serialize_pcp_instance(const PcpInstance& p) {
	std::ostringstream out;
	auto line = [&](const char* key, const std::vector<std::string>& words) {
		out << key;
		for (const auto& w : words)
			out << ' ' << w;
		out << '\n';
	};
	line("alphabet:", p.base_alphabet);
	for (std::size_t i = 0; i < p.size(); ++i) {
		line("u:", p.u_words[i]);
		line("v:", p.v_words[i]);
	}
	return out.str();
}

// --- random unary fixtures ---------------------------------------------------------

/// Pseudorandom machine over Σ = Γ = {a}: every state has exactly one
/// a-transition (erasing or not). The mode and, in AS mode, the accepting
/// states are drawn from the same seed.
inline Machine random_unary_noaux(std::uint64_t seed, std::size_t n_states) {
	if (n_states == 0)
		throw PreconditionError("random_unary_noaux needs at least one state");
	std::mt19937_64 rng(seed);
	auto draw = [&](std::uint64_t bound) { return rng() % bound; };
	std::vector<StateId> names;
	for (std::size_t i = 0; i < n_states; ++i)
		names.push_back("q" + std::to_string(i));
	auto mode = draw(2) == 0 ? AcceptMode::AS : AcceptMode::ET;
	auto m = detail::make_machine({"a"}, {"a"}, names, names[0], mode);
	for (const auto& q : names) {
		const auto& target = names[draw(n_states)];
		if (draw(2) == 0)
			m.set_transition(q, "a", target, detail::erase);
		else
			m.set_transition(q, "a", target, "a");
	}
	if (mode == AcceptMode::AS)
		for (const auto& q : names)
			if (draw(3) == 0)
				m.accepting.insert(q);
	return m;
}

// --- catalogue ----------------------------------------------------------------------

inline std::vector<std::string> gallery_names() {
	return {"power-of-two", "marked-copy", "center-language", "balance-ab-et", "pcp-example"};
}

/// Gallery machine by CLI name, or nullopt for an unknown name.
inline std::optional<Machine> gallery_machine(std::string_view name) {
	if (name == "power-of-two")
		return power_of_two();
	if (name == "marked-copy")
		return marked_copy();
	if (name == "center-language")
		return center_language();
	if (name == "balance-ab-et")
		return balance_ab_et();
	if (name == "pcp-example")
		return pcp_machine(example_pcp_instance());
	return std::nullopt;
}

} // namespace fr1tass
