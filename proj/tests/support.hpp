#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <tcln/tcln.hpp>

namespace tcln::testing
{
	/// Definitional h-index: try every k from 0 to |v| and keep the largest k for
	/// which at least k entries are >= k. No sorting.
	inline auto brute_h_index(const CitationVector& v) -> std::uint64_t
	{
		std::uint64_t best = 0;
		for (std::uint64_t k = 0; k <= v.size(); ++k)
		{
			std::uint64_t at_least = 0;
			for (auto c : v)
				if (c >= k)
					++at_least;
			if (at_least >= k)
				best = k;
		}
		return best;
	}

	inline auto read_text(const std::filesystem::path& p) -> std::string
	{
		std::ifstream in(p, std::ios::binary);
		std::ostringstream ss;
		ss << in.rdbuf();
		return ss.str();
	}

	/// Fresh empty directory under the system temp dir.
	inline auto scratch_dir(const std::string& name) -> std::filesystem::path
	{
		auto dir = std::filesystem::temp_directory_path() / ("tcln_test_" + name);
		std::filesystem::remove_all(dir);
		std::filesystem::create_directories(dir);
		return dir;
	}

	/// Random graph built only through add_researcher / publish_paper.
	inline auto random_graph(std::uint64_t seed, bool with_layout) -> Tcln
	{
		std::mt19937_64 gen(seed);
		auto pick = [&](std::uint64_t lo, std::uint64_t hi) {
			return std::uniform_int_distribution<std::uint64_t>(lo, hi)(gen);
		};

		Tcln g;
		const auto n = pick(0, 12);
		for (std::uint64_t i = 0; i < n; ++i)
		{
			ResearcherNode r;
			r.id = ResearcherId{"a" + std::to_string(pick(0, 1'000'000)) + "_" + std::to_string(i)};
			r.label = "Researcher " + std::to_string(i);
			g.add_researcher(r);
			const auto papers = pick(0, 9);
			for (std::uint64_t k = 0; k < papers; ++k)
			{
				PaperNode p;
				p.id = PaperId{r.id.value + "/paper" + std::to_string(k)};
				p.owner = r.id;
				p.pub_year = static_cast<int>(pick(1950, 2020));
				p.citations = pick(0, 3) == 0 ? pick(0, 500) : pick(0, 12);
				p.tend_to_be_cited = static_cast<double>(pick(1, 100)) / 100.0;
				g.publish_paper(r.id, p);
			}
		}
		return with_layout ? layout(std::move(g)) : g;
	}

	struct GraphCounts
	{
		std::size_t vertices = 0;
		std::size_t edges = 0;
		std::size_t boxes = 0; ///< DOT only: nodes drawn as researchers
	};

	/// Minimal Pajek .net reader: sequential 1-based vertices, edges between known ids.
	inline auto check_pajek(const std::string& text) -> std::optional<GraphCounts>
	{
		std::istringstream in(text);
		std::string line;
		static const std::regex header(R"re(\*Vertices (\d+))re");
		static const std::regex vertex(R"re((\d+) "([^"]*)" (-?\d+\.\d+) (-?\d+\.\d+))re");
		static const std::regex edge(R"re((\d+) (\d+))re");
		std::smatch m;

		if (!std::getline(in, line) || !std::regex_match(line, m, header))
			return std::nullopt;
		GraphCounts counts;
		const auto n = std::stoul(m[1]);
		for (std::size_t i = 1; i <= n; ++i)
		{
			if (!std::getline(in, line) || !std::regex_match(line, m, vertex) || std::stoul(m[1]) != i)
				return std::nullopt;
			++counts.vertices;
		}
		if (!std::getline(in, line) || line != "*Edges")
			return std::nullopt;
		while (std::getline(in, line))
		{
			if (!std::regex_match(line, m, edge))
				return std::nullopt;
			const auto a = std::stoul(m[1]);
			const auto b = std::stoul(m[2]);
			if (a < 1 || a > n || b < 1 || b > n || a == b)
				return std::nullopt;
			++counts.edges;
		}
		return counts;
	}

	/// Minimal reader for the DOT subset the exporter writes: an undirected graph,
	/// one node statement per line, edges only between declared nodes.
	inline auto check_dot(const std::string& text) -> std::optional<GraphCounts>
	{
		std::istringstream in(text);
		std::string line;
		static const std::regex node(R"re(  "((?:[^"\\]|\\.)*)" \[shape=(box|circle), label="(?:[^"\\]|\\.)*"(?:, pos="-?\d+\.\d+,-?\d+\.\d+!")?\];)re");
		static const std::regex edge(R"re(  "((?:[^"\\]|\\.)*)" -- "((?:[^"\\]|\\.)*)";)re");
		std::smatch m;

		if (!std::getline(in, line) || line != "graph tcln {")
			return std::nullopt;
		GraphCounts counts;
		std::set<std::string> declared;
		bool closed = false;
		while (std::getline(in, line))
		{
			if (closed)
				return std::nullopt;
			if (line == "}")
				closed = true;
			else if (std::regex_match(line, m, node))
			{
				if (!declared.insert(m[1]).second)
					return std::nullopt;
				++counts.vertices;
				if (m[2] == "box")
					++counts.boxes;
			}
			else if (std::regex_match(line, m, edge))
			{
				if (!declared.contains(m[1]) || !declared.contains(m[2]))
					return std::nullopt;
				++counts.edges;
			}
			else
				return std::nullopt;
		}
		if (!closed)
			return std::nullopt;
		return counts;
	}
}
