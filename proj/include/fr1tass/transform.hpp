#pragma once

#include <cstddef>
#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "model.hpp"

namespace fr1tass {

// --- partial orders -----------------------------------------------------------------

struct PartialOrderSpec {
	std::vector<std::string> elements;
	std::vector<std::pair<std::string, std::string>> pairs; // (x, y) means x <= y
};

/// Kahn's algorithm; among the currently minimal elements the one listed
/// first in `elements` is emitted first. Reflexive pairs are ignored.
inline std::vector<std::string> linear_extension(const PartialOrderSpec& p) {
	std::unordered_map<std::string, std::size_t> index;
	for (const auto& e : p.elements)
		index.emplace(e, index.size());
	if (index.size() != p.elements.size())
		throw PreconditionError("duplicate element in partial order");
	const std::size_t n = p.elements.size();
	std::vector<std::vector<std::size_t>> succ(n);
	std::vector<std::size_t> indegree(n, 0);
	std::set<std::pair<std::size_t, std::size_t>> seen;
	for (const auto& [x, y] : p.pairs) {
		auto ix = index.find(x), iy = index.find(y);
		if (ix == index.end() || iy == index.end())
			throw PreconditionError("pair mentions an element outside the order");
		if (ix->second == iy->second || !seen.emplace(ix->second, iy->second).second)
			continue;
		succ[ix->second].push_back(iy->second);
		++indegree[iy->second];
	}
	std::set<std::size_t> ready;
	for (std::size_t i = 0; i < n; ++i)
		if (indegree[i] == 0)
			ready.insert(i);
	std::vector<std::string> out;
	while (!ready.empty()) {
		auto i = *ready.begin();
		ready.erase(ready.begin());
		out.push_back(p.elements[i]);
		for (auto j : succ[i])
			if (--indegree[j] == 0)
				ready.insert(j);
	}
	if (out.size() != n)
		throw CycleError("the order relation has a cycle among distinct elements");
	return out;
}

namespace detail {

/// Hands out names that are unique within one construction.
class NameAllocator {
public:
	NameAllocator() = default;
	template <class Range>
	explicit NameAllocator(const Range& reserved) {
		for (const auto& r : reserved)
			used_.insert(r);
	}

	std::string take(const std::string& base) {
		std::string name = base;
		while (!used_.insert(name).second)
			name += "'";
		return name;
	}

private:
	std::unordered_set<std::string> used_;
};

inline void require_mode(const Machine& m, AcceptMode mode, std::string_view op) {
	if (m.mode != mode)
		throw ModeError(std::string(op) + " expects a machine in " + std::string(to_string(mode)) + " mode");
}

/// Drops states not reachable from the start through defined transitions.
inline Machine trim_unreachable(const Machine& m) {
	std::unordered_map<StateId, std::vector<const Transition*>> rows;
	for (const auto& [key, t] : m.transitions)
		rows[key.first].push_back(&t);
	std::unordered_set<StateId> reach{m.start};
	std::deque<StateId> work{m.start};
	while (!work.empty()) {
		auto q = work.front();
		work.pop_front();
		for (const auto* t : rows[q])
			if (reach.insert(t->target).second)
				work.push_back(t->target);
	}
	Machine out;
	out.input_alphabet = m.input_alphabet;
	out.tape_alphabet = m.tape_alphabet;
	out.mode = m.mode;
	out.accepts_empty = m.accepts_empty;
	out.notes = m.notes;
	out.start = m.start;
	for (const auto& q : m.states)
		if (reach.count(q))
			out.add_state(q);
	for (const auto& f : m.accepting)
		if (reach.count(f))
			out.accepting.insert(f);
	for (const auto& [key, t] : m.transitions)
		if (reach.count(key.first))
			out.transitions.emplace(key, t);
	return out;
}

inline std::string note_chain(const Machine& m, const std::string& step) {
	auto it = m.notes.find("normalized");
	return it == m.notes.end() ? step : it->second + ", " + step;
}

} // namespace detail

// --- normalizations -----------------------------------------------------------------

/// Replaces erasure by writing a fresh smallest letter BOX that every state
/// skips. AS mode only.
inline Machine remove_erasing(const Machine& a) {
	detail::require_mode(a, AcceptMode::AS, "remove_erasing");
	Machine b = a;
	const Letter box = fresh_name("BOX", a.tape_alphabet.letters());
	std::vector<Letter> letters{box};
	letters.insert(letters.end(), a.tape_alphabet.begin(), a.tape_alphabet.end());
	b.tape_alphabet = OrderedAlphabet(std::move(letters));
	for (auto& [key, t] : b.transitions)
		if (t.erases())
			t.write = box;
	for (const auto& q : a.states)
		b.set_transition(q, box, q, box);
	b.notes["box"] = box;
	return b;
}

/// An accepting start state does not accept before the first step, so
/// constructions that read acceptance off the current state need a
/// non-accepting copy of it as the new start.
inline Machine detach_accepting_start(const Machine& a) {
	if (!a.is_accepting(a.start))
		return a;
	Machine b = a;
	detail::NameAllocator names(a.states);
	const StateId start = names.take(a.start + "_0");
	for (const auto& l : a.tape_alphabet)
		if (const auto* t = a.find(a.start, l))
			b.set_transition(start, l, t->target, t->write);
	b.add_state(start);
	b.start = start;
	return b;
}

/// Non-erasing, non-accepting-start form used by the product constructions.
inline Machine normalize_for_product(const Machine& a) {
	Machine b = a.has_erasing_transition() ? remove_erasing(a) : a;
	if (a.has_erasing_transition())
		b.notes["normalized"] = detail::note_chain(a, "remove_erasing");
	return detail::trim_unreachable(detach_accepting_start(b));
}

// --- mode conversions -----------------------------------------------------------------

/// AS to ET: accepting states erase everything they read. The empty word is
/// always accepted in ET mode regardless of `accepts_empty`.
inline Machine as_to_et(const Machine& a) {
	detail::require_mode(a, AcceptMode::AS, "as_to_et");
	Machine b = detach_accepting_start(remove_erasing(a));
	for (auto it = b.transitions.begin(); it != b.transitions.end();)
		it = b.is_accepting(it->first.first) ? b.transitions.erase(it) : std::next(it);
	for (const auto& f : b.accepting)
		for (const auto& l : b.tape_alphabet)
			b.set_transition(f, l, f, std::nullopt);
	b.accepting.clear();
	b.mode = AcceptMode::ET;
	b.accepts_empty = false;
	b.notes.erase("box");
	b.notes["construction"] = "as_to_et";
	return b;
}

/// ET to AS. The first cell is rewritten to a marked copy; erasure writes
/// BOX; each state exists in a clean and a dirty copy recording whether a
/// non-BOX cell was read since the marked cell. Reading a marked BOX while
/// clean means the simulated tape is empty.
inline Machine et_to_as(const Machine& a) {
	detail::require_mode(a, AcceptMode::ET, "et_to_as");
	detail::NameAllocator letters(a.tape_alphabet.letters());
	const Letter box = letters.take("BOX");
	const Letter box_marked = letters.take(box + "^");
	std::map<Letter, Letter> marked;
	std::vector<Letter> order{box, box_marked};
	for (const auto& g : a.tape_alphabet) {
		marked[g] = letters.take(g + "^");
		order.push_back(marked[g]);
		order.push_back(g);
	}

	Machine b;
	b.input_alphabet = a.input_alphabet;
	b.tape_alphabet = OrderedAlphabet(order);
	b.mode = AcceptMode::AS;
	b.accepts_empty = true;

	detail::NameAllocator names;
	const StateId init = names.take("init");
	std::map<StateId, StateId> dirty, clean;
	for (const auto& q : a.states) {
		dirty[q] = names.take(q + "+");
		clean[q] = names.take(q + "-");
	}
	const StateId acc = names.take("acc");
	b.start = init;
	b.add_state(init);
	for (const auto& q : a.states) {
		b.add_state(dirty[q]);
		b.add_state(clean[q]);
	}
	b.add_state(acc);
	b.accepting = {acc};

	auto written = [&](const Transition& t, bool mark) {
		if (!t.write)
			return mark ? box_marked : box;
		return mark ? marked.at(*t.write) : *t.write;
	};
	for (const auto& s : a.ordered_input())
		if (const auto* t = a.find(a.start, s))
			b.set_transition(init, s, clean[t->target], written(*t, true));
	for (const auto& q : a.states) {
		for (const auto* copy : {&dirty, &clean}) {
			const auto& here = copy->at(q);
			b.set_transition(here, box, here, box);
			b.set_transition(here, box_marked, copy == &clean ? acc : clean[q], box_marked);
			for (const auto& g : a.tape_alphabet) {
				const auto* t = a.find(q, g);
				if (!t)
					continue;
				b.set_transition(here, g, dirty[t->target], written(*t, false));
				b.set_transition(here, marked.at(g), clean[t->target], written(*t, true));
			}
		}
	}
	b.notes["construction"] = "et_to_as";
	return b;
}

// --- Boolean closure ---------------------------------------------------------------------

namespace detail {

enum class ProductKind { Intersection, Union };

inline Machine product(const Machine& a_in, const Machine& b_in, ProductKind kind) {
	require_mode(a_in, AcceptMode::AS, "product");
	require_mode(b_in, AcceptMode::AS, "product");
	require_same_input(a_in, b_in);
	const Machine a = normalize_for_product(a_in);
	const Machine b = normalize_for_product(b_in);
	const bool is_union = kind == ProductKind::Union;

	// Component view of a tape letter: raw input letters are read by both sides.
	struct Cell {
		Letter x1, x2;
	};
	std::vector<Letter> letters;
	std::vector<std::optional<Cell>> cells; // nullopt for raw input letters
	std::map<std::pair<Letter, Letter>, std::size_t> pair_index;
	NameAllocator letter_names(a.input_alphabet);
	for (const auto& s : a.ordered_input()) {
		letters.push_back(s);
		cells.push_back(std::nullopt);
	}
	auto pair_letter = [&](const Letter& x1, const Letter& x2) {
		auto [it, fresh] = pair_index.emplace(std::make_pair(x1, x2), letters.size());
		if (fresh) {
			letters.push_back(letter_names.take("(" + x1 + "," + x2 + ")"));
			cells.push_back(Cell{x1, x2});
		}
		return letters[it->second];
	};

	// Component state: a state name, or nullopt for ⊥ (stuck, union only).
	using Side = std::optional<StateId>;
	std::vector<std::pair<Side, Side>> states;
	std::map<std::pair<Side, Side>, std::size_t> state_index;
	NameAllocator state_names;
	std::vector<StateId> state_label;
	auto side_name = [](const Side& s) { return s ? *s : std::string("_"); };
	auto state_of = [&](const Side& p, const Side& q) {
		auto [it, fresh] = state_index.emplace(std::make_pair(p, q), states.size());
		if (fresh) {
			states.emplace_back(p, q);
			state_label.push_back(state_names.take("(" + side_name(p) + "," + side_name(q) + ")"));
		}
		return state_label[it->second];
	};
	auto accepting = [&](const Side& p, const Side& q) {
		bool f1 = p && a.is_accepting(*p), f2 = q && b.is_accepting(*q);
		return is_union ? (f1 || f2) : (f1 && f2);
	};

	Machine c;
	c.input_alphabet = a.input_alphabet;
	c.mode = AcceptMode::AS;
	c.accepts_empty = is_union ? (a.accepts_empty || b.accepts_empty) : (a.accepts_empty && b.accepts_empty);
	c.start = state_of(a.start, b.start);

	// Step one component: frozen once accepting (intersection), ⊥ once stuck (union).
	struct Move {
		Side next;
		Letter write;
		bool ok;
	};
	auto advance = [&](const Machine& m, const Side& q, const Letter& x) -> Move {
		if (!q)
			return {std::nullopt, x, true};
		if (!is_union && m.is_accepting(*q))
			return {q, x, true};
		const auto* t = m.find(*q, x);
		if (!t)
			return is_union ? Move{std::nullopt, x, true} : Move{q, x, false};
		return {t->target, *t->write, true};
	};

	// Saturate: new pair letters must also be tried on states already visited.
	std::vector<std::size_t> done;
	for (bool progress = true; progress;) {
		progress = false;
		for (std::size_t i = 0; i < states.size(); ++i) {
			done.resize(states.size(), 0);
			const auto [p, q] = states[i];
			if (accepting(p, q))
				continue;
			for (; done[i] < letters.size(); ++done[i], progress = true) {
				const std::size_t j = done[i];
				const Letter x1 = cells[j] ? cells[j]->x1 : letters[j];
				const Letter x2 = cells[j] ? cells[j]->x2 : letters[j];
				auto m1 = advance(a, p, x1);
				auto m2 = advance(b, q, x2);
				if (!m1.ok || !m2.ok || (!m1.next && !m2.next))
					continue;
				const Letter w = pair_letter(m1.write, m2.write);
				const StateId target = state_of(m1.next, m2.next);
				c.set_transition(state_label[i], letters[j], target, w);
			}
		}
	}

	// Freezing order: componentwise product order on pair letters, input letters on top.
	PartialOrderSpec order;
	std::vector<Letter> pair_letters;
	for (std::size_t j = 0; j < letters.size(); ++j)
		if (cells[j])
			pair_letters.push_back(letters[j]);
	std::unordered_map<Letter, Cell> cell_of;
	for (std::size_t j = 0; j < letters.size(); ++j)
		if (cells[j])
			cell_of.emplace(letters[j], *cells[j]);
	auto ranks = [&](const Letter& l) {
		const auto& cl = cell_of.at(l);
		return std::make_pair(*a.tape_alphabet.rank(cl.x1), *b.tape_alphabet.rank(cl.x2));
	};
	std::sort(pair_letters.begin(), pair_letters.end(),
	          [&](const Letter& l, const Letter& r) { return ranks(l) < ranks(r); });
	order.elements = pair_letters;
	for (const auto& l : pair_letters)
		for (const auto& r : pair_letters) {
			auto [l1, l2] = ranks(l);
			auto [r1, r2] = ranks(r);
			if (l != r && l1 <= r1 && l2 <= r2)
				order.pairs.emplace_back(l, r);
		}
	auto gamma = linear_extension(order);
	for (const auto& s : a.ordered_input())
		gamma.push_back(s);
	c.tape_alphabet = OrderedAlphabet(std::move(gamma));

	for (std::size_t i = 0; i < states.size(); ++i) {
		c.add_state(state_label[i]);
		if (accepting(states[i].first, states[i].second))
			c.accepting.insert(state_label[i]);
	}
	c.notes["construction"] = is_union ? "union" : "intersect";
	for (const auto& [tag, m] : {std::pair{"left", &a}, std::pair{"right", &b}})
		if (auto it = m->notes.find("normalized"); it != m->notes.end())
			c.notes[std::string(tag) + "_normalized"] = it->second;
	return c;
}

} // namespace detail

/// Runs both machines in lockstep on pair letters.
inline Machine intersect(const Machine& a, const Machine& b) {
	return detail::product(a, b, detail::ProductKind::Intersection);
}

inline Machine union_of(const Machine& a, const Machine& b) {
	return detail::product(a, b, detail::ProductKind::Union);
}

/// Complement of an AS machine. Erasing inputs are normalized first unless
/// `strict` is set, in which case they are refused.
///
/// The first step marks the first cell. Every state gets copies indexed
/// 1..N+1 (N = |Q|+1) counting passes over the marked cell without any
/// rewrite; one more such pass, or any undefined move, enters the sink,
/// which is the only accepting state. Entering an original accepting state
/// enters a non-accepting dead end instead.
inline Machine complement(const Machine& a_in, bool strict = false) {
	detail::require_mode(a_in, AcceptMode::AS, "complement");
	if (strict && a_in.has_erasing_transition())
		throw ErasingInput("complement needs a non-erasing machine (apply remove_erasing)");
	Machine a = a_in.has_erasing_transition() ? remove_erasing(a_in) : a_in;
	if (a_in.has_erasing_transition())
		a.notes["normalized"] = detail::note_chain(a_in, "remove_erasing");

	const std::size_t copies = a.states.size() + 2; // indices 1..N+1
	detail::NameAllocator letter_names(a.tape_alphabet.letters());
	std::map<Letter, Letter> marked;
	std::vector<Letter> order;
	for (const auto& g : a.tape_alphabet) {
		marked[g] = letter_names.take(g + "^");
		order.push_back(marked[g]);
		order.push_back(g);
	}

	Machine c;
	c.input_alphabet = a.input_alphabet;
	c.tape_alphabet = OrderedAlphabet(order);
	c.mode = AcceptMode::AS;
	c.accepts_empty = !a.accepts_empty;

	detail::NameAllocator names;
	const StateId init = names.take("init");
	const StateId sink = names.take("sink");
	std::map<StateId, StateId> dead;
	for (const auto& f : a.accepting)
		dead[f] = names.take(f);
	std::map<std::pair<StateId, std::size_t>, StateId> copy_name;
	auto copy = [&](const StateId& q, std::size_t i) -> StateId {
		if (a.is_accepting(q))
			return dead.at(q);
		auto [it, fresh] = copy_name.emplace(std::make_pair(q, i), "");
		if (fresh)
			it->second = names.take(q + "@" + std::to_string(i));
		return it->second;
	};
	c.start = init;
	c.add_state(init);
	c.add_state(sink);
	c.accepting = {sink};

	for (const auto& s : a.ordered_input()) {
		if (const auto* t = a.find(a.start, s))
			c.set_transition(init, s, copy(t->target, 1), marked.at(*t->write));
		else
			c.set_transition(init, s, sink, s);
	}
	for (const auto& q : a.states) {
		if (a.is_accepting(q))
			continue;
		for (std::size_t i = 1; i <= copies; ++i) {
			const StateId here = copy(q, i);
			for (const auto& g : a.tape_alphabet) {
				const auto* t = a.find(q, g);
				if (!t) {
					c.set_transition(here, g, sink, g);
					c.set_transition(here, marked.at(g), sink, marked.at(g));
					continue;
				}
				const bool same = *t->write == g;
				c.set_transition(here, g, copy(t->target, same ? i : 1), *t->write);
				if (!same)
					c.set_transition(here, marked.at(g), copy(t->target, 1), marked.at(*t->write));
				else if (i + 1 > copies)
					c.set_transition(here, marked.at(g), sink, marked.at(g));
				else
					c.set_transition(here, marked.at(g), copy(t->target, i + 1), marked.at(g));
			}
		}
	}
	for (const auto& [f, d] : dead)
		c.add_state(d);
	c.notes["construction"] = "complement";
	if (auto it = a.notes.find("normalized"); it != a.notes.end())
		c.notes["normalized"] = it->second;
	return detail::trim_unreachable(c);
}

// --- sequential two-track constructions -------------------------------------------------------

namespace detail {

/// Extra states of the sequential constructions beyond max(|Q_a|, |Q_b|):
/// the marking start, the freezer and the final accepting state.
inline constexpr std::size_t sequential_extra_states = 3;

inline Machine sequential(const Machine& a_in, const Machine& b_in, ProductKind kind) {
	require_mode(a_in, AcceptMode::AS, "sequential product");
	require_mode(b_in, AcceptMode::AS, "sequential product");
	require_same_input(a_in, b_in);
	const bool is_union = kind == ProductKind::Union;
	auto normalized = [](const Machine& m) {
		if (!m.has_erasing_transition())
			return m;
		Machine out = remove_erasing(m);
		out.notes["normalized"] = note_chain(m, "remove_erasing");
		return out;
	};
	const Machine a = normalized(a_in);
	const Machine b = normalized(b_in);
	const auto sigma = a.ordered_input();

	// Tape letters, ascending: phase-2 cells (b's track, marked below plain),
	// phase-1 cells (a's letter with the input letter kept for b), raw input.
	std::vector<Letter> taken(sigma);
	NameAllocator letter_names(taken);
	std::map<Letter, Letter> z, z_marked;
	std::map<std::pair<Letter, Letter>, Letter> y, y_marked;
	std::vector<Letter> order;
	for (const auto& g : b.tape_alphabet) {
		z_marked[g] = letter_names.take("[" + g + "]^");
		z[g] = letter_names.take("[" + g + "]");
		order.push_back(z_marked[g]);
		order.push_back(z[g]);
	}
	for (const auto& g : a.tape_alphabet)
		for (const auto& s : sigma) {
			y_marked[{g, s}] = letter_names.take("[" + g + "|" + s + "]^");
			y[{g, s}] = letter_names.take("[" + g + "|" + s + "]");
			order.push_back(y_marked[{g, s}]);
			order.push_back(y[{g, s}]);
		}
	order.insert(order.end(), sigma.begin(), sigma.end());

	Machine c;
	c.input_alphabet = a.input_alphabet;
	c.tape_alphabet = OrderedAlphabet(order);
	c.mode = AcceptMode::AS;
	c.accepts_empty = is_union ? (a.accepts_empty || b.accepts_empty) : (a.accepts_empty && b.accepts_empty);

	// State i stands for a's i-th state in phase 1 and b's i-th state in
	// phase 2; the letter under the head tells the phases apart.
	NameAllocator names;
	const StateId init = names.take("init");
	const std::size_t shared = std::max(a.states.size(), b.states.size());
	std::vector<StateId> slot(shared);
	std::unordered_map<StateId, std::size_t> a_slot, b_slot;
	for (std::size_t i = 0; i < shared; ++i) {
		std::string label;
		if (i < a.states.size())
			label = a.states[i];
		if (i < b.states.size())
			label += (label.empty() ? "" : "/") + b.states[i];
		slot[i] = names.take(label);
		if (i < a.states.size())
			a_slot[a.states[i]] = i;
		if (i < b.states.size())
			b_slot[b.states[i]] = i;
	}
	const StateId freeze = names.take("Z");
	const StateId acc = names.take("acc");
	c.start = init;
	c.add_state(init);
	for (const auto& s : slot)
		c.add_state(s);
	c.add_state(freeze);
	c.add_state(acc);
	c.accepting = {acc};

	auto a_target = [&](const StateId& q) { return a.is_accepting(q) ? (is_union ? acc : freeze) : slot[a_slot.at(q)]; };
	auto b_target = [&](const StateId& q) { return b.is_accepting(q) ? acc : slot[b_slot.at(q)]; };
	// Cell written when phase 1 ends on this step: the frozen input letter.
	auto frozen = [&](const Letter& s, bool mark) { return mark ? z_marked.at(s) : z.at(s); };

	// Phase 1. A move into the freezer converts the cell right away.
	auto phase1 = [&](const StateId& from, const StateId& q, const Letter& read, const Letter& g, const Letter& s,
	                  bool mark_out) {
		const auto* t = a.find(q, g);
		if (!t) {
			if (is_union)
				c.set_transition(from, read, freeze, frozen(s, mark_out));
			return;
		}
		const StateId target = a_target(t->target);
		if (target == freeze)
			c.set_transition(from, read, freeze, frozen(s, mark_out));
		else
			c.set_transition(from, read, target, mark_out ? y_marked.at({*t->write, s}) : y.at({*t->write, s}));
	};
	for (const auto& s : sigma)
		phase1(init, a.start, s, s, s, true);
	for (const auto& q : a.states) {
		if (a.is_accepting(q))
			continue;
		const StateId& here = slot[a_slot.at(q)];
		for (const auto& s : sigma) {
			phase1(here, q, s, s, s, false);
			for (const auto& g : a.tape_alphabet) {
				phase1(here, q, y.at({g, s}), g, s, false);
				phase1(here, q, y_marked.at({g, s}), g, s, true);
			}
		}
	}

	// Freezer: convert the rest of the tape, then start b on the marked cell.
	for (const auto& s : sigma) {
		c.set_transition(freeze, s, freeze, z.at(s));
		for (const auto& g : a.tape_alphabet) {
			c.set_transition(freeze, y.at({g, s}), freeze, z.at(s));
			c.set_transition(freeze, y_marked.at({g, s}), freeze, z_marked.at(s));
		}
	}
	for (const auto& g : b.tape_alphabet) {
		c.set_transition(freeze, z.at(g), freeze, z.at(g));
		if (const auto* t = b.find(b.start, g))
			c.set_transition(freeze, z_marked.at(g), b_target(t->target), z_marked.at(*t->write));
	}

	// Phase 2.
	for (const auto& q : b.states) {
		if (b.is_accepting(q))
			continue;
		const StateId& here = slot[b_slot.at(q)];
		for (const auto& g : b.tape_alphabet)
			if (const auto* t = b.find(q, g)) {
				c.set_transition(here, z.at(g), b_target(t->target), z.at(*t->write));
				c.set_transition(here, z_marked.at(g), b_target(t->target), z_marked.at(*t->write));
			}
	}

	c.notes["construction"] = is_union ? "union_sequential" : "intersect_sequential";
	c.notes["extra_states"] = std::to_string(sequential_extra_states);
	return c;
}

} // namespace detail

/// Runs a on one track, then b on the other. Rejects as soon as a does.
inline Machine intersect_sequential(const Machine& a, const Machine& b) {
	return detail::sequential(a, b, detail::ProductKind::Intersection);
}

/// Runs a on one track and accepts when it does; when a gets stuck, runs b.
/// The first operand must halt on every input: a loop in a is never escaped.
inline Machine union_sequential(const Machine& a, const Machine& b) {
	return detail::sequential(a, b, detail::ProductKind::Union);
}

// --- regular languages ----------------------------------------------------------------------

struct DfaSpec {
	std::vector<Letter> alphabet;
	std::vector<StateId> states;
	StateId start;
	std::set<StateId> accepting;
	std::map<std::pair<StateId, Letter>, StateId> transitions;

	bool accepts(const Word& w) const {
		StateId q = start;
		for (const auto& x : w) {
			auto it = transitions.find({q, x});
			if (it == transitions.end())
				return false;
			q = it->second;
		}
		return accepting.count(q) != 0;
	}
};

inline void check_dfa(const DfaSpec& d) {
	std::set<StateId> states(d.states.begin(), d.states.end());
	std::set<Letter> sigma(d.alphabet.begin(), d.alphabet.end());
	if (!states.count(d.start))
		throw PreconditionError("DFA start state '" + d.start + "' is not a state");
	for (const auto& f : d.accepting)
		if (!states.count(f))
			throw PreconditionError("DFA accepting state '" + f + "' is not a state");
	for (const auto& [key, p] : d.transitions)
		if (!states.count(key.first) || !states.count(p) || !sigma.count(key.second))
			throw PreconditionError("DFA transition (" + key.first + ", " + key.second + ") is out of range");
}

/// Each letter is replaced by BOX while the DFA runs; on the next BOX an
/// accepting DFA state erases it and enters the only accepting state.
inline Machine from_dfa(const DfaSpec& d) {
	check_dfa(d);
	Machine m;
	m.input_alphabet.insert(d.alphabet.begin(), d.alphabet.end());
	const Letter box = fresh_name("BOX", d.alphabet);
	std::vector<Letter> gamma{box};
	gamma.insert(gamma.end(), d.alphabet.begin(), d.alphabet.end());
	m.tape_alphabet = OrderedAlphabet(gamma);
	m.mode = AcceptMode::AS;
	m.start = d.start;
	for (const auto& q : d.states)
		m.add_state(q);
	const StateId done = fresh_name("f_A", d.states);
	for (const auto& [key, p] : d.transitions)
		m.set_transition(key.first, key.second, p, box);
	for (const auto& q : d.states)
		if (d.accepting.count(q))
			m.set_transition(q, box, done, std::nullopt);
	m.add_state(done);
	m.accepting = {done};
	m.accepts_empty = d.accepting.count(d.start) != 0;
	return m;
}

/// DFA file: `alphabet:`, `states:`, `start:`, `accept:` then `trans: q a -> p` lines.
inline DfaSpec parse_dfa(std::string_view text) {
	DfaSpec d;
	std::set<std::string> seen;
	bool have_start = false;
	for (const auto& [line, tokens] : detail::tokenized_lines(text)) {
		const auto& key = tokens[0];
		std::vector<std::string> args(tokens.begin() + 1, tokens.end());
		if (key != "trans:" && !seen.insert(key).second)
			throw ParseError(line, std::nullopt, "duplicate '" + key + "' line");
		if (key == "alphabet:") {
			d.alphabet = args;
		} else if (key == "states:") {
			d.states = args;
		} else if (key == "start:") {
			if (args.size() != 1)
				throw ParseError(line, std::nullopt, "'start:' takes exactly one state");
			d.start = args[0];
			have_start = true;
		} else if (key == "accept:") {
			d.accepting.insert(args.begin(), args.end());
		} else if (key == "trans:") {
			if (args.size() != 4 || args[2] != "->")
				throw ParseError(line, std::nullopt, "expected 'trans: <state> <letter> -> <state>'");
			if (!d.transitions.emplace(std::make_pair(args[0], args[1]), args[3]).second)
				throw ParseError(line, std::nullopt, "second transition for (" + args[0] + ", " + args[1] + ")");
		} else {
			throw ParseError(line, std::nullopt, "unexpected directive '" + key + "'");
		}
	}
	if (!have_start)
		throw ParseError(1, std::nullopt, "missing 'start:' line");
	for (const auto& l : d.alphabet)
		if (!is_valid_letter_name(l))
			throw ParseError(1, ViolationCode::UnknownLetter, "invalid letter name '" + l + "'");
	try {
		check_dfa(d);
	} catch (const PreconditionError& e) {
		throw ParseError(1, std::nullopt, e.what());
	}
	return d;
}

} // namespace fr1tass
