#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace fr1tass;

namespace {

LanguagePredicate negation(const LanguagePredicate& p) {
	return {"not " + p.name, [p](const Word& w) { return !p(w); }, {}};
}

// AS machine over {a} that rereads its tape forever.
Machine as_loop_machine() {
	auto m = fixtures::machine({"a"}, {"a"}, "q", AcceptMode::AS);
	m.set_transition("q", "a", "q", "a");
	return m;
}

} // namespace

TEST_CASE("linear extensions", "[transform]") {
	CHECK(linear_extension({{"x", "y"}, {}}) == std::vector<std::string>{"x", "y"});
	CHECK(linear_extension({{"x", "y"}, {{"y", "x"}}}) == std::vector<std::string>{"y", "x"});

	PartialOrderSpec product{{"(1,1)", "(1,2)", "(2,1)", "(2,2)"},
	                         {{"(1,1)", "(1,2)"}, {"(1,2)", "(2,2)"}, {"(1,1)", "(2,1)"}, {"(2,1)", "(2,2)"}}};
	auto order = linear_extension(product);
	const std::vector<std::string> first{"(1,1)", "(1,2)", "(2,1)", "(2,2)"};
	const std::vector<std::string> second{"(1,1)", "(2,1)", "(1,2)", "(2,2)"};
	CHECK((order == first || order == second));
	CHECK(order == linear_extension(product));

	CHECK_THROWS_AS(linear_extension({{"x", "y"}, {{"x", "y"}, {"y", "x"}}}), CycleError);
	CHECK_THROWS_AS(linear_extension({{"x"}, {{"x", "z"}}}), PreconditionError);
	CHECK_THROWS_AS(linear_extension({{"x", "x"}, {}}), PreconditionError);
}

TEST_CASE("remove_erasing", "[transform]") {
	SECTION("non-erasing input only gains BOX") {
		auto a = fixtures::all_a_machine();
		auto b = remove_erasing(a);
		const auto& box = b.notes.at("box");
		CHECK(b.tape_alphabet[0] == box);
		CHECK(b.transitions.size() == a.transitions.size() + a.states.size());
		for (const auto& [key, t] : a.transitions)
			CHECK(*b.find(key.first, key.second) == t);
		for (const auto& q : a.states)
			CHECK(*b.find(q, box) == Transition{q, box});
		CHECK_FALSE(equivalent_up_to(a, b, 10));
	}
	SECTION("power of two") {
		auto b = remove_erasing(power_of_two());
		CHECK(b.erasing_count() == 0);
		CHECK(validate(b).ok());
		CHECK_FALSE(equivalent_up_to(power_of_two(), b, 16));
	}
	SECTION("BOX avoids existing names") {
		auto a = fixtures::machine({"a"}, {"BOX", "a"}, "q", AcceptMode::AS);
		a.set_transition("q", "a", "q", std::nullopt);
		CHECK(remove_erasing(a).notes.at("box") == "BOX'");
	}
	CHECK_THROWS_AS(remove_erasing(balance_ab_et()), ModeError);
}

TEST_CASE("as_to_et", "[transform]") {
	auto b = as_to_et(power_of_two());
	CHECK(b.mode == AcceptMode::ET);
	CHECK(validate(b).ok());
	CHECK_FALSE(equivalent_up_to(power_of_two(), b, 16, 1));

	SECTION("empty language") {
		auto none = fixtures::machine({"a", "b"}, {"a", "b"}, "q", AcceptMode::AS);
		none.set_transition("q", "a", "q", std::nullopt);
		none.set_transition("q", "b", "q", "a");
		auto et = as_to_et(none);
		CHECK(enumerate_accepted(et, 8) == std::vector<Word>{Word{}}); // ET always accepts λ
	}
	SECTION("accepting start state") {
		auto m = fixtures::machine({"a"}, {"a"}, "q", AcceptMode::AS);
		m.accepting = {"q"};
		m.set_transition("q", "a", "r", "a");
		m.set_transition("r", "a", "q", "a");
		CHECK_FALSE(equivalent_up_to(m, as_to_et(m), 8, 1));
	}
	CHECK_THROWS_AS(as_to_et(balance_ab_et()), ModeError);
}

TEST_CASE("et_to_as", "[transform]") {
	auto b = et_to_as(balance_ab_et());
	CHECK(b.mode == AcceptMode::AS);
	CHECK(validate(b).ok());
	CHECK_FALSE(equivalent_up_to(balance_ab_et(), b, 10));

	SECTION("ET machine without transitions accepts only λ") {
		auto m = fixtures::machine({"a", "b"}, {"a", "b"}, "q", AcceptMode::ET);
		auto as = et_to_as(m);
		CHECK(as.accepts_empty);
		CHECK(enumerate_accepted(as, 6) == std::vector<Word>{Word{}});
	}
	SECTION("ET loops stay rejections") {
		auto as = et_to_as(fixtures::pure_cycle_machine());
		CHECK(enumerate_accepted(as, 6) == std::vector<Word>{Word{}});
	}
	SECTION("round trip through both conversions") {
		CHECK_FALSE(equivalent_up_to(balance_ab_et(), as_to_et(b), 8));
	}
	CHECK_THROWS_AS(et_to_as(power_of_two()), ModeError);
}

TEST_CASE("products", "[transform]") {
	const auto p2 = power_of_two();
	const auto even = from_dfa(fixtures::dfa_even_a());
	const auto odd = from_dfa(fixtures::dfa_odd_a());

	CHECK_FALSE(equivalent_up_to(intersect(p2, fixtures::all_a_machine()), p2, 16));
	CHECK(enumerate_accepted(union_of(even, odd), 12).size() == 13);
	CHECK(enumerate_accepted(intersect(even, odd), 12).empty());

	SECTION("idempotence on gallery AS machines") {
		for (const auto& [name, m] : fixtures::gallery_as_machines()) {
			INFO(name);
			std::size_t len = name == "pcp-example" ? 7 : 10;
			CHECK_FALSE(equivalent_up_to(intersect(m, m), m, len));
			CHECK_FALSE(equivalent_up_to(union_of(m, m), m, len));
		}
	}
	SECTION("pair letters are ordered compatibly and Σ sits on top") {
		auto c = intersect(p2, even);
		CHECK(validate(c).ok());
		CHECK(c.erasing_count() == 0);
		const auto ga = normalize_for_product(p2).tape_alphabet;
		const auto gb = normalize_for_product(even).tape_alphabet;
		const auto& gamma = c.tape_alphabet;
		CHECK(gamma[gamma.size() - 1] == "a");
		struct Cell {
			std::size_t rank, x, y;
		};
		std::vector<Cell> cells;
		for (const auto& l : gamma) {
			if (l.front() != '(')
				continue;
			auto comma = l.find(',');
			auto x = ga.rank(l.substr(1, comma - 1)), y = gb.rank(l.substr(comma + 1, l.size() - comma - 2));
			REQUIRE(x);
			REQUIRE(y);
			cells.push_back({*gamma.rank(l), *x, *y});
			CHECK(*gamma.rank(l) < *gamma.rank("a"));
		}
		CHECK(cells.size() >= 2);
		for (const auto& p : cells)
			for (const auto& q : cells)
				if (p.x <= q.x && p.y <= q.y)
					CHECK(p.rank <= q.rank);
	}
	SECTION("empty word flags combine") {
		CHECK_FALSE(intersect(p2, even).accepts_empty);
		CHECK(union_of(p2, even).accepts_empty);
	}
	SECTION("union keeps running the other side after one gets stuck") {
		auto u = union_of(center_language(), from_dfa(fixtures::dfa_a_star_b()));
		CHECK(accepts(u, {"a", "a", "b"}));
		CHECK(accepts(u, {"b", "a", "a"}));
		CHECK_FALSE(accepts(u, {"b", "b"}));
	}
	CHECK_THROWS_AS(intersect(p2, center_language()), AlphabetMismatch);
	CHECK_THROWS_AS(union_of(balance_ab_et(), center_language()), ModeError);
}

TEST_CASE("complement", "[transform]") {
	const auto p2 = power_of_two();
	auto c = complement(p2);
	CHECK(validate(c).ok());
	CHECK(c.accepting.size() == 1);
	CHECK(c.notes.count("normalized"));
	CHECK_FALSE(matches_predicate_up_to(c, negation(predicates::power_of_two_block()), 16));
	CHECK(accepts(c, {}));

	SECTION("involution on gallery AS machines") {
		for (const auto& [name, m] : fixtures::gallery_as_machines()) {
			if (name == "pcp-example")
				continue;
			INFO(name);
			CHECK_FALSE(equivalent_up_to(complement(complement(m)), m, 8));
		}
	}
	SECTION("a looping run is a rejection") {
		auto loop = as_loop_machine();
		CHECK(run(loop, {"a"}).verdict == Verdict::RejectedLoop);
		CHECK(accepts(complement(loop), {"a"}));
		CHECK(enumerate_accepted(complement(loop), 8).size() == 9);
	}
	SECTION("De Morgan") {
		auto even = from_dfa(fixtures::dfa_even_a());
		CHECK_FALSE(equivalent_up_to(complement(union_of(p2, even)), intersect(complement(p2), complement(even)), 6));
	}
	CHECK_THROWS_AS(complement(p2, true), ErasingInput);
	CHECK_NOTHROW(complement(fixtures::all_a_machine(), true));
	CHECK_THROWS_AS(complement(balance_ab_et()), ModeError);
}

TEST_CASE("sequential products", "[transform]") {
	const auto p2 = power_of_two();
	const auto even = from_dfa(fixtures::dfa_even_a());
	const auto center = center_language();
	const auto astarb = from_dfa(fixtures::dfa_a_star_b());

	for (const auto& [a, b] : {std::pair{p2, even}, std::pair{even, p2}, std::pair{center, astarb},
	                           std::pair{astarb, center}}) {
		auto i = intersect_sequential(a, b);
		auto u = union_sequential(a, b);
		CHECK(validate(i).ok());
		CHECK(validate(u).ok());
		CHECK(i.notes.at("extra_states") == std::to_string(detail::sequential_extra_states));
		for (const auto* c : {&i, &u})
			CHECK(c->states.size() <= std::max(a.states.size(), b.states.size()) + detail::sequential_extra_states);
		CHECK_FALSE(equivalent_up_to(i, intersect(a, b), 8));
		CHECK_FALSE(equivalent_up_to(u, union_of(a, b), 8));
	}

	SECTION("union with an everything-accepting first operand") {
		auto all = fixtures::all_a_machine();
		all.accepts_empty = true;
		CHECK(enumerate_accepted(union_sequential(all, p2), 12).size() == 13);
	}
	SECTION("intersection rejects once the first operand does") {
		auto none = fixtures::machine({"a"}, {"a"}, "q", AcceptMode::AS);
		CHECK(enumerate_accepted(intersect_sequential(none, fixtures::all_a_machine()), 8).empty());
	}
	CHECK_THROWS_AS(intersect_sequential(p2, center), AlphabetMismatch);
	CHECK_THROWS_AS(union_sequential(balance_ab_et(), center), ModeError);
}

TEST_CASE("from_dfa", "[transform]") {
	auto m = from_dfa(fixtures::dfa_a_star_b());
	CHECK(validate(m).ok());
	CHECK(m.tape_alphabet[0] == "BOX");
	CHECK(m.states.size() == 3);
	CHECK(m.accepting == std::set<StateId>{"f_A"});
	CHECK_FALSE(matches_predicate_up_to(m, predicates::regular("a*b"), 10));

	auto even = from_dfa(fixtures::dfa_even_a());
	CHECK(even.accepts_empty);
	CHECK_FALSE(matches_predicate_up_to(even, predicates::regular("(aa)*"), 12));

	auto empty = fixtures::dfa_a_star_b();
	empty.accepting.clear();
	CHECK(enumerate_accepted(from_dfa(empty), 8).empty());

	SECTION("letter named BOX") {
		auto d = fixtures::dfa({"BOX"}, {"s"}, "s", {"s"}, {{"s", "BOX", "s"}});
		auto b = from_dfa(d);
		CHECK(b.tape_alphabet[0] == "BOX'");
		CHECK(enumerate_accepted(b, 4).size() == 5);
	}
	SECTION("malformed DFAs") {
		auto d = fixtures::dfa_a_star_b();
		d.transitions[{"s", "c"}] = "s";
		CHECK_THROWS_AS(from_dfa(d), PreconditionError);
		auto e = fixtures::dfa_a_star_b();
		e.start = "x";
		CHECK_THROWS_AS(from_dfa(e), PreconditionError);
	}
}

TEST_CASE("DFA files", "[transform]") {
	std::ifstream in(std::string(FR1TASS_MACHINES_DIR) + "/a_star_b.dfa");
	std::stringstream buf;
	buf << in.rdbuf();
	auto d = parse_dfa(buf.str());
	auto want = fixtures::dfa_a_star_b();
	CHECK(d.alphabet == want.alphabet);
	CHECK(d.states == want.states);
	CHECK(d.start == want.start);
	CHECK(d.accepting == want.accepting);
	CHECK(d.transitions == want.transitions);

	CHECK_THROWS_AS(parse_dfa("alphabet: a\nstates: s\naccept: s\n"), ParseError);
	CHECK_THROWS_AS(parse_dfa("alphabet: a\nstates: s\nstart: s\ntrans: s a s\n"), ParseError);
	CHECK_THROWS_AS(parse_dfa("alphabet: a\nstates: s\nstart: s\ntrans: s a -> t\n"), ParseError);
	CHECK_THROWS_AS(parse_dfa("alphabet: a\nstates: s\nstart: s\ntrans: s a -> s\ntrans: s a -> s\n"), ParseError);
}
