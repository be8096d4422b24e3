#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace fr1tass;

namespace {

Word letters(const std::string& s) {
	Word w;
	for (char c : s)
		w.emplace_back(1, c);
	return w;
}

Word hash_copy(const Word& w) {
	Word out{"#"};
	out.insert(out.end(), w.begin(), w.end());
	out.push_back("#");
	out.insert(out.end(), w.begin(), w.end());
	return out;
}

// Concatenation of the chosen words, for checking candidates directly.
Word concat(const std::vector<Word>& words, const std::vector<std::size_t>& indices) {
	Word out;
	for (auto k : indices)
		out.insert(out.end(), words[k - 1].begin(), words[k - 1].end());
	return out;
}

} // namespace

TEST_CASE("power of two", "[gallery]") {
	auto m = power_of_two();
	CHECK(m.states.size() == 5);
	CHECK(m.tape_alphabet.letters() == std::vector<Letter>{"A", "a"});
	for (const char* w : {"a", "aa", "aaaa"})
		CHECK(accepts(m, letters(w)));
	CHECK_FALSE(accepts(m, {}));
	CHECK_FALSE(accepts(m, letters("aaa")));
	auto r = run(m, Word(16, "a"));
	CHECK(r.accepted());
	CHECK(r.total_sweeps <= 4 * (4 + 1) + 2);
}

TEST_CASE("marked copy", "[gallery]") {
	auto m = marked_copy();
	CHECK(*m.tape_alphabet.rank("$") < *m.tape_alphabet.rank("#"));
	CHECK(accepts(m, {"#", "#"}));
	CHECK(accepts(m, {"#", "a", "b", "#", "a", "b"}));
	CHECK_FALSE(accepts(m, {"#", "a", "#", "b"}));
	CHECK_FALSE(accepts(m, {"#", "a", "b", "#", "b", "a"}));
	for (const auto& w : fixtures::words_of_length({"a", "b"}, 3)) {
		Word bad = w;
		bad.push_back("#");
		CHECK_FALSE(accepts(m, bad));
	}
	for (std::size_t n = 0; n <= 6; ++n)
		for (const auto& w : fixtures::words_of_length({"a", "b"}, n)) {
			auto r = run(m, hash_copy(w));
			INFO(join_word(hash_copy(w)));
			CHECK(r.accepted());
			CHECK(r.total_sweeps <= 2 * n + 4);
		}
}

TEST_CASE("center language", "[gallery]") {
	auto m = center_language();
	for (const char* w : {"a", "bab", "aaabb"})
		CHECK(accepts(m, letters(w)));
	for (const char* w : {"", "ab", "bbb"})
		CHECK_FALSE(accepts(m, letters(w)));
	for (std::size_t n = 2; n <= 10; n += 2)
		CHECK(enumerate_accepted(m, n).size() == enumerate_accepted(m, n - 1).size());

	SECTION("per-letter rewrite chain is freezing") {
		for (const auto& x : center::bases()) {
			auto rank = [&](const Letter& l) { return *m.tape_alphabet.rank(l); };
			CHECK(rank(center::overlined_primed(x)) < rank(center::primed(x)));
			CHECK(rank(center::primed(x)) < rank(center::overlined(x)));
			CHECK(rank(center::overlined(x)) < rank(x));
			CHECK(rank(center::start(x)) < rank(center::overlined_primed(x)));
		}
	}
	SECTION("marking stops at the middle") {
		for (std::size_t n = 1; n <= 9; ++n)
			for (const auto& w : fixtures::words_of_length({"a", "b"}, n)) {
				auto r = run(m, w, RunLimits{std::nullopt, true});
				CHECK(center_marking_index(r.sweeps.back().start_tape) == n / 2);
			}
	}
	SECTION("marking index of hand-made tapes") {
		CHECK(center_marking_index({"<a>o^", "b^'", "a", "b^"}) == 2u);
		CHECK_FALSE(center_marking_index({"a^", "b^'"}));
	}
}

TEST_CASE("balance of a and b in ET mode", "[gallery]") {
	auto m = balance_ab_et();
	CHECK(m.mode == AcceptMode::ET);
	CHECK(m.states.size() == 2);
	CHECK(m.transitions.size() == 4);
	CHECK(m.input_alphabet == std::set<Letter>(m.tape_alphabet.begin(), m.tape_alphabet.end()));
	CHECK(validate(m).ok());
	for (const char* w : {"", "a", "ab", "baab"})
		CHECK(accepts(m, letters(w)));
	for (const char* w : {"b", "aa"})
		CHECK_FALSE(accepts(m, letters(w)));
}

TEST_CASE("PCP candidates", "[gallery]") {
	auto p = example_pcp_instance();
	CHECK(encode_pcp_candidate(p, {1, 2}) == Word{"#", "1^", "2^", "#", "a^", "a^", "b^", "#", "a^", "a^", "b^"});
	CHECK(encode_pcp_candidate(p, {1}) == Word{"#", "1^", "#", "a^", "#", "a^", "a^"});
	CHECK_THROWS_AS(encode_pcp_candidate(p, {}), IndexOutOfRange);
	CHECK_THROWS_AS(encode_pcp_candidate(p, {3}), IndexOutOfRange);
	CHECK_THROWS_AS(encode_pcp_candidate(p, {0}), IndexOutOfRange);
}

TEST_CASE("PCP instances are checked", "[gallery]") {
	CHECK_THROWS_AS(check_instance(PcpInstance{{}, {}, {"a"}}), InstanceError);
	CHECK_THROWS_AS(check_instance(PcpInstance{{{"a"}}, {}, {"a"}}), InstanceError);
	CHECK_THROWS_AS(check_instance(PcpInstance{{{"a"}}, {{}}, {"a"}}), InstanceError);
	CHECK_THROWS_AS(check_instance(PcpInstance{{{"c"}}, {{"a"}}, {"a"}}), InstanceError);
	CHECK_THROWS_AS(check_instance(PcpInstance{{{"1"}}, {{"1"}}, {"1"}}), InstanceError); // clashes with index 1
	CHECK_THROWS_AS(pcp_machine(PcpInstance{{}, {}, {"a"}}), InstanceError);
	CHECK_NOTHROW(check_instance(example_pcp_instance()));
}

TEST_CASE("PCP instance files", "[gallery]") {
	std::ifstream in(std::string(FR1TASS_MACHINES_DIR) + "/pcp_example.pcp");
	std::stringstream buf;
	buf << in.rdbuf();
	auto p = parse_pcp_instance(buf.str());
	CHECK(p.u_words == example_pcp_instance().u_words);
	CHECK(p.v_words == example_pcp_instance().v_words);
	auto again = parse_pcp_instance(serialize_pcp_instance(p));
	CHECK(again.u_words == p.u_words);
	CHECK(again.v_words == p.v_words);
	CHECK(again.base_alphabet == p.base_alphabet);
	CHECK_THROWS_AS(parse_pcp_instance("u: a\nv: a\n"), ParseError);
	CHECK_THROWS_AS(parse_pcp_instance("alphabet: a\nw: a\n"), ParseError);
	CHECK_THROWS_AS(parse_pcp_instance("alphabet: a\nu: a\n"), InstanceError);
}

TEST_CASE("PCP machine accepts exactly the solutions among candidates", "[gallery]") {
	const std::vector<PcpInstance> instances{
	    example_pcp_instance(),
	    PcpInstance{{{"a", "b"}, {"b"}}, {{"a"}, {"b", "b"}}, {"a", "b"}},
	    PcpInstance{{{"a"}, {"b", "a"}, {"b"}}, {{"a", "b"}, {"a"}, {"a", "b"}}, {"a", "b"}},
	};
	for (const auto& p : instances) {
		auto m = pcp_machine(p);
		CHECK(validate(m).ok());
		CompiledMachine cm(m);
		std::size_t solutions = 0;
		std::vector<std::vector<std::size_t>> candidates{{}};
		for (int len = 1; len <= 3; ++len) {
			std::vector<std::vector<std::size_t>> next;
			for (const auto& c : candidates)
				for (std::size_t k = 1; k <= p.size(); ++k) {
					next.push_back(c);
					next.back().push_back(k);
				}
			candidates = next;
			for (const auto& c : candidates) {
				bool solves = concat(p.u_words, c) == concat(p.v_words, c);
				solutions += solves;
				auto w = encode_pcp_candidate(p, c);
				INFO(join_word(w));
				CHECK(run(cm, w).accepted() == solves);
			}
		}
		CHECK(solutions > 0);
	}
	SECTION("unsolved candidates with the right segments but swapped halves") {
		auto p = example_pcp_instance();
		auto m = pcp_machine(p);
		CHECK_FALSE(accepts(m, {"#", "2^", "1^", "#", "a^", "a^", "b^", "#", "a^", "a^", "b^"}));
		CHECK_FALSE(accepts(m, {"#", "1^", "2^", "#", "a", "a", "b", "#", "a", "a", "b"}));
		CHECK_FALSE(accepts(m, {"#", "#", "#"}));
	}
}

TEST_CASE("random unary machines", "[gallery]") {
	for (std::uint64_t seed = 0; seed < 50; ++seed) {
		auto n = 1 + seed % 7;
		auto m = random_unary_noaux(seed, n);
		CHECK(m == random_unary_noaux(seed, n));
		CHECK(validate(m).ok());
		CHECK(m.states.size() == n);
		CHECK(m.transitions.size() == n);
		CHECK(m.tape_alphabet.letters() == std::vector<Letter>{"a"});
	}
	CHECK_FALSE(random_unary_noaux(1, 6) == random_unary_noaux(2, 6));
	CHECK_THROWS_AS(random_unary_noaux(1, 0), PreconditionError);
}

TEST_CASE("gallery registry", "[gallery]") {
	CHECK(gallery_names().size() == 5);
	for (const auto& name : gallery_names())
		CHECK(gallery_machine(name));
	CHECK_FALSE(gallery_machine("no-such-machine"));
}
