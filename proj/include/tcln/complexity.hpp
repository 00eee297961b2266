#pragma once

#include <cstdint>

#include "model.hpp"

namespace tcln
{
	/// Size of a graph as a TCLN versus as a traditional author-paper citation network.
	///
	/// The traditional network keeps the same researcher and paper nodes, adds one
	/// node per citing work and one edge per citation, on top of the authorship edges.
	struct ComplexityReport
	{
		std::uint64_t researchers = 0;
		std::uint64_t papers = 0;
		std::uint64_t citations = 0;

		std::uint64_t tcln_nodes = 0;
		std::uint64_t tcln_edges = 0;
		std::uint64_t trad_nodes = 0;
		std::uint64_t trad_edges = 0;
		std::uint64_t trad_citation_edges = 0;

		double m_avg = 0.0; ///< papers per researcher
		double n_avg = 0.0; ///< citations per paper
		double edge_ratio = 0.0; ///< trad_edges / tcln_edges, equals n_avg + 1
		double node_ratio = 0.0; ///< trad_nodes / tcln_nodes

		friend bool operator==(const ComplexityReport&, const ComplexityReport&) = default;
	};

	[[nodiscard]] inline auto compare_complexity(const Tcln& g) -> ComplexityReport
	{
		ComplexityReport r;
		r.researchers = g.researchers().size();
		r.papers = g.papers().size();
		for (const auto& [id, p] : g.papers())
			r.citations += p.citations;

		r.tcln_nodes = r.researchers + r.papers;
		r.tcln_edges = g.edges().size();
		r.trad_citation_edges = r.citations;
		r.trad_nodes = r.tcln_nodes + r.citations;
		r.trad_edges = r.citations + r.papers;

		auto ratio = [](std::uint64_t num, std::uint64_t den) {
			return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
		};
		r.m_avg = ratio(r.papers, r.researchers);
		r.n_avg = ratio(r.citations, r.papers);
		r.edge_ratio = ratio(r.trad_edges, r.tcln_edges);
		r.node_ratio = ratio(r.trad_nodes, r.tcln_nodes);
		return r;
	}
}
