// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include <tcln/cli.hpp>

#include "support.hpp"

using namespace tcln;
using tcln::testing::read_text;

namespace
{
	const std::filesystem::path fixtures{TCLN_FIXTURE_DIR};

	struct Outcome
	{
		bool pass = true;
		std::string detail;

		void require(bool cond, const std::string& what)
		{
			if (!cond && pass)
			{
				pass = false;
				detail = what;
			}
		}
	};

	auto invoke(const std::vector<std::string>& args, std::string* out_text = nullptr) -> int
	{
		std::istringstream in;
		std::ostringstream out, err;
		const int code = cli::run_cli(args, in, out, err);
		if (out_text)
			*out_text = out.str();
		return code;
	}

	auto seconds_since(std::chrono::steady_clock::time_point t0) -> double
	{
		return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	}

	/// Calls `visit` for every non-increasing vector of length <= max_len with
	/// entries <= max_value. By permutation invariance this covers every vector.
	void for_each_multiset(std::size_t max_len, CitationCount max_value, const std::function<void(const CitationVector&)>& visit)
	{
		CitationVector v;
		std::function<void(CitationCount)> extend = [&](CitationCount cap) {
			visit(v);
			if (v.size() == max_len)
				return;
			for (CitationCount c = 0; c <= cap; ++c)
			{
				v.push_back(c);
				extend(c);
				v.pop_back();
			}
		};
		extend(max_value);
	}

	auto c1_table1_replay() -> Outcome
	{
		Outcome o;
		const auto t0 = std::chrono::steady_clock::now();
		std::string out;
		const int code = invoke({"replay", "--input", (fixtures / "lesser_1968_1977.csv").string(), "--from", "1968",
		                         "--to", "1977"},
		                        &out);
		const double elapsed = seconds_since(t0);
		o.require(code == 0, "replay exited nonzero");

		std::vector<std::uint64_t> hs;
		std::istringstream in(out);
		std::string line;
		std::getline(in, line);
		while (std::getline(in, line))
			hs.push_back(std::stoull(line.substr(line.find(',') + 1)));
		o.require(hs == std::vector<std::uint64_t>{1, 1, 2, 3, 3, 4, 4, 5, 6, 8}, "h column differs from Table 1");
		o.require(elapsed < 1.0, "replay took longer than 1 s");
		o.detail = o.pass ? fmt::format("h = [1,1,2,3,3,4,4,5,6,8] in {:.3f} s", elapsed) : o.detail;
		return o;
	}

	auto c2_worked_example() -> Outcome
	{
		Outcome o;
		const auto h = compute_h_index(CitationVector{4, 4, 4, 4, 4, 1});
		o.require(h == 4, fmt::format("h = {}", h));
		o.detail = o.pass ? "h([4,4,4,4,4,1]) = 4" : o.detail;
		return o;
	}

	auto c3_oracle_equivalence() -> Outcome
	{
		Outcome o;
		const auto t0 = std::chrono::steady_clock::now();
		std::size_t exhaustive = 0, mismatches = 0;
		for_each_multiset(12, 12, [&](const CitationVector& v) {
			++exhaustive;
			// Ascending order as well, so the sort inside compute_h_index is exercised.
			CitationVector asc(v.rbegin(), v.rend());
			const auto want = tcln::testing::brute_h_index(v);
			if (compute_h_index(v) != want || compute_h_index(asc) != want)
				++mismatches;
		});

		std::mt19937_64 gen(20100717);
		for (int i = 0; i < 10000; ++i)
		{
			CitationVector v(std::uniform_int_distribution<std::size_t>(0, 200)(gen));
			for (auto& c : v)
				c = std::uniform_int_distribution<CitationCount>(0, 10000)(gen);
			if (compute_h_index(v) != tcln::testing::brute_h_index(v))
				++mismatches;
		}
		const double elapsed = seconds_since(t0);
		o.require(exhaustive == 5200300, fmt::format("enumerated {} multisets, expected 5200300", exhaustive));
		o.require(mismatches == 0, fmt::format("{} mismatches", mismatches));
		o.require(elapsed < 30.0, fmt::format("took {:.1f} s", elapsed));
		o.detail = o.pass ? fmt::format("{} exhaustive + 10000 random vectors, 0 mismatches, {:.1f} s", exhaustive,
		                                elapsed)
		                  : o.detail;
		return o;
	}

	auto c4_theorem_counts() -> Outcome
	{
		Outcome o;
		for (std::uint64_t seed = 0; seed < 50; ++seed)
		{
			SimulationConfig cfg;
			cfg.seed = seed;
			cfg.new_researchers_per_year = 2;
			cfg.max_new_papers_per_year = 2;
			const auto g = run(cfg).graph;
			const auto report = compare_complexity(g);
			o.require(report.tcln_edges == g.papers().size(), fmt::format("seed {}: tcln_edges != papers", seed));
			o.require(report.trad_edges - report.tcln_edges == report.citations,
			          fmt::format("seed {}: citation accounting", seed));
		}

		constexpr std::uint64_t researchers = 3;
		for (std::uint64_t m = 1; m <= 10; ++m)
			for (std::uint64_t n = 1; n <= 10; ++n)
			{
				Tcln g;
				for (std::uint64_t r = 0; r < researchers; ++r)
				{
					ResearcherNode node;
					node.id = ResearcherId{fmt::format("r{}", r)};
					g.add_researcher(node);
					for (std::uint64_t k = 0; k < m; ++k)
					{
						PaperNode p;
						p.id = PaperId{fmt::format("r{}-p{}", r, k)};
						p.owner = node.id;
						p.citations = n;
						p.tend_to_be_cited = 0.5;
						g.publish_paper(node.id, p);
					}
				}
				const auto report = compare_complexity(g);
				o.require(report.trad_citation_edges == m * n * researchers, fmt::format("m={} n={}: citation edges", m, n));
				o.require(report.tcln_edges == m * researchers, fmt::format("m={} n={}: tcln edges", m, n));
				o.require(report.trad_citation_edges == n * report.tcln_edges, fmt::format("m={} n={}: ratio", m, n));
			}
		o.detail = o.pass ? "50 seeds: tcln_edges = |papers|; (m,n) in {1..10}^2: citation edges = m*n*R, tcln = m*R"
		                  : o.detail;
		return o;
	}

	auto c5_figure5_structure() -> Outcome
	{
		Outcome o;
		const auto dir = tcln::testing::scratch_dir("acceptance_c5");
		o.require(invoke({"simulate", "--researchers", "60", "--max-init-papers", "10", "--out", (dir / "run").string()}) == 0,
		          "simulate exited nonzero");
		o.require(invoke({"simulate", "--researchers", "60", "--max-init-papers", "10", "--years", "0", "--out",
		                  (dir / "init").string()}) == 0,
		          "simulate --years 0 exited nonzero");
		if (!o.pass)
			return o;

		for (const auto* sub : {"run", "init"})
		{
			const auto g = graph_from_json_text(read_text(dir / sub / "graph.json"));
			const auto report = audit(g);
			o.require(report.ok(), fmt::format("{}: audit: {}", sub, report.ok() ? "" : report.violations.front()));
			o.require(g.researchers().size() == 60, fmt::format("{}: {} researchers", sub, g.researchers().size()));
			for (const auto& [id, p] : g.papers())
				o.require(p.tend_to_be_cited >= 0.01 && p.tend_to_be_cited <= 1.00,
				          fmt::format("{}: tendency {} out of range", sub, p.tend_to_be_cited));
			for (const auto& [id, r] : g.researchers())
				o.require(r.pos.y == static_cast<double>(r.h_index),
				          fmt::format("{}: researcher {} y = {} but h = {}", sub, id.value, r.pos.y, r.h_index));
			if (std::string_view(sub) == "init")
				for (const auto& [id, p] : g.papers())
					o.require(p.citations <= 9, fmt::format("initial paper {} has {} citations", id.value, p.citations));
		}
		o.detail = o.pass ? "60 researchers, initial cites in [0,9], tendency in [0.01,1.00], audit ok, y = h" : o.detail;
		return o;
	}

	auto c6_determinism() -> Outcome
	{
		Outcome o;
		for (std::uint64_t seed = 1; seed <= 10; ++seed)
		{
			std::vector<std::filesystem::path> dirs;
			for (int k = 0; k < 2; ++k)
			{
				dirs.push_back(tcln::testing::scratch_dir(fmt::format("acceptance_c6_{}_{}", seed, k)));
				o.require(invoke({"simulate", "--seed", std::to_string(seed), "--new-researchers", "1", "--out",
				                  dirs.back().string()}) == 0,
				          "simulate exited nonzero");
			}
			for (const auto* file : {"graph.json", "trajectories.csv"})
				o.require(read_text(dirs[0] / file) == read_text(dirs[1] / file) && !read_text(dirs[0] / file).empty(),
				          fmt::format("seed {}: {} differs", seed, file));
		}
		o.detail = o.pass ? "10 seeds, graph.json and trajectories.csv byte-identical" : o.detail;
		return o;
	}

	auto c7_monotonicity() -> Outcome
	{
		Outcome o;
		std::size_t ticks = 0;
		for (std::uint64_t seed = 0; seed < 100; ++seed)
		{
			SimulationConfig cfg;
			cfg.seed = 1000 + seed;
			cfg.new_researchers_per_year = seed % 3;
			cfg.max_new_papers_per_year = 1 + seed % 2;
			const auto result = run(cfg, [&](const SimState& s) {
				++ticks;
				const auto report = audit(s.graph);
				o.require(report.ok(), fmt::format("seed {} tick {}: {}", cfg.seed, s.tick,
				                                   report.ok() ? "" : report.violations.front()));
			});
			for (const auto& t : result.trajectories)
			{
				auto bad = trajectory_violation(t.points);
				o.require(!bad, fmt::format("seed {} {}: {}", cfg.seed, t.researcher.value, bad.value_or("")));
			}
		}

		const std::pair<const char*, RecordFormat> sources[] = {
		    {"lesser_1968_1977.csv", RecordFormat::long_csv},
		    {"lesser_table1_vectors.csv", RecordFormat::yearly_vectors},
		};
		for (const auto& [name, format] : sources)
		{
			std::ifstream in(fixtures / name, std::ios::binary);
			const auto t = compute_trajectory(load_records(in, format).records, 1968, 1977);
			o.require(!trajectory_violation(t), fmt::format("{}: trajectory not monotone", name));
			for (const auto& snap : replay_into_tcln(t, "Victor Lesser"))
			{
				++ticks;
				o.require(audit(layout(snap.graph)).ok(), fmt::format("{}: audit failed in {}", name, snap.year));
			}
		}
		o.detail = o.pass ? fmt::format("100 runs + 2 replay fixtures, {} audited year boundaries", ticks) : o.detail;
		return o;
	}

	auto c8_round_trip() -> Outcome
	{
		Outcome o;
		for (std::uint64_t seed = 0; seed < 50; ++seed)
		{
			const auto g = tcln::testing::random_graph(5000 + seed, true);
			const auto first = export_graph(g, ExportFormat::json);
			const auto second = export_graph(graph_from_json_text(first), ExportFormat::json);
			o.require(first == second, fmt::format("graph {}: JSON round trip differs", seed));

			const auto pajek = tcln::testing::check_pajek(export_graph(g, ExportFormat::pajek));
			o.require(pajek && pajek->vertices == g.node_count() && pajek->edges == g.edges().size(),
			          fmt::format("graph {}: Pajek check failed", seed));
			const auto dot = tcln::testing::check_dot(export_graph(g, ExportFormat::dot));
			o.require(dot && dot->vertices == g.node_count() && dot->edges == g.edges().size() &&
			              dot->boxes == g.researchers().size(),
			          fmt::format("graph {}: DOT check failed", seed));
		}
		o.detail = o.pass ? "50 graphs: JSON byte-identical, Pajek/DOT counts verified" : o.detail;
		return o;
	}
}

int main()
{
	const std::pair<const char*, std::function<Outcome()>> criteria[] = {
	    {"C1 Table 1 replay", c1_table1_replay},
	    {"C2 worked example", c2_worked_example},
	    {"C3 h-index oracle equivalence", c3_oracle_equivalence},
	    {"C4 space accounting", c4_theorem_counts},
	    {"C5 random researcher structure", c5_figure5_structure},
	    {"C6 determinism", c6_determinism},
	    {"C7 monotonicity and audits", c7_monotonicity},
	    {"C8 export round trip", c8_round_trip},
	};

	int failures = 0;
	for (const auto& [name, check] : criteria)
	{
		Outcome o;
		try
		{
			o = check();
		}
		catch (const std::exception& e)
		{
			o = {false, std::string("exception: ") + e.what()};
		}
		std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
		failures += o.pass ? 0 : 1;
	}
	std::cout << (failures == 0 ? "all acceptance criteria passed" : fmt::format("{} criteria failed", failures))
	          << std::endl;
	return failures == 0 ? 0 : 1;
}
