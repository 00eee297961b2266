#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "error.hpp"
#include "ids.hpp"
#include "indices.hpp"

namespace tcln
{
	inline constexpr double min_tendency = 0.01;
	inline constexpr double max_tendency = 1.00;

	struct Point
	{
		double x = 0.0;
		double y = 0.0;

		friend bool operator==(const Point&, const Point&) = default;
	};

	/// Limits of the Cartesian world every node is placed in.
	struct WorldBounds
	{
		double min_x = -16.0;
		double max_x = 16.0;
		double min_y = -16.0;
		double max_y = 16.0;

		[[nodiscard]] bool valid() const
		{
			return std::isfinite(min_x) && std::isfinite(max_x) && std::isfinite(min_y) &&
			       std::isfinite(max_y) && min_x < max_x && min_y < max_y;
		}

		[[nodiscard]] bool contains(Point p) const
		{
			return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
		}

		[[nodiscard]] auto clamp(Point p) const -> Point
		{
			return {std::clamp(p.x, min_x, max_x), std::clamp(p.y, min_y, max_y)};
		}

		friend bool operator==(const WorldBounds&, const WorldBounds&) = default;
	};

	struct PaperNode
	{
		PaperId id;
		int pub_year = 0;
		CitationCount citations = 0;
		double tend_to_be_cited = min_tendency;
		ResearcherId owner;
		std::optional<Point> pos;

		friend bool operator==(const PaperNode&, const PaperNode&) = default;
	};

	struct ResearcherNode
	{
		ResearcherId id;
		std::string label;
		std::vector<PaperId> papers; ///< publication order
		CitationCount total_cites = 0;
		std::uint64_t h_index = 0;
		Point pos;

		[[nodiscard]] auto num_papers() const -> std::size_t { return papers.size(); }

		friend bool operator==(const ResearcherNode&, const ResearcherNode&) = default;
	};

	/// Authorship link. Always joins a researcher to one of its own papers.
	struct Edge
	{
		ResearcherId researcher;
		PaperId paper;

		friend auto operator<=>(const Edge&, const Edge&) = default;
		friend bool operator==(const Edge&, const Edge&) = default;
	};

	/// Bipartite researcher/paper network with hub-spoke topology.
	///
	/// Every paper hangs off exactly one researcher, so the edge count always equals the
	/// paper count. Mutators validate first and either apply fully or throw ModelError
	/// with the graph untouched. Each researcher's total citations and h-index are kept
	/// in sync with its papers, and its y coordinate tracks the (clamped) h-index.
	class Tcln
	{
	public:
		explicit Tcln(WorldBounds bounds = {}) : bounds_(bounds)
		{
			if (!bounds_.valid())
				throw ModelError(fmt::format("invalid world bounds: x [{}, {}], y [{}, {}]", bounds_.min_x,
				                             bounds_.max_x, bounds_.min_y, bounds_.max_y));
		}

		[[nodiscard]] auto bounds() const -> const WorldBounds& { return bounds_; }
		[[nodiscard]] auto researchers() const -> const std::map<ResearcherId, ResearcherNode>& { return researchers_; }
		[[nodiscard]] auto papers() const -> const std::map<PaperId, PaperNode>& { return papers_; }
		[[nodiscard]] auto edges() const -> const std::set<Edge>& { return edges_; }

		/// Researcher ids in insertion order.
		[[nodiscard]] auto researcher_order() const -> const std::vector<ResearcherId>& { return order_; }

		[[nodiscard]] auto node_count() const -> std::size_t { return researchers_.size() + papers_.size(); }
		[[nodiscard]] bool empty() const { return researchers_.empty() && papers_.empty(); }

		[[nodiscard]] bool has_researcher(const ResearcherId& id) const { return researchers_.contains(id); }
		[[nodiscard]] bool has_paper(const PaperId& id) const { return papers_.contains(id); }

		[[nodiscard]] auto researcher(const ResearcherId& id) const -> const ResearcherNode&
		{
			auto it = researchers_.find(id);
			if (it == researchers_.end())
				throw ModelError(fmt::format("unknown researcher '{}'", id.value));
			return it->second;
		}

		[[nodiscard]] auto paper(const PaperId& id) const -> const PaperNode&
		{
			auto it = papers_.find(id);
			if (it == papers_.end())
				throw ModelError(fmt::format("unknown paper '{}'", id.value));
			return it->second;
		}

		/// Citation counts of a researcher's papers, in publication order.
		[[nodiscard]] auto citation_vector(const ResearcherId& id) const -> CitationVector
		{
			const auto& r = researcher(id);
			CitationVector v;
			v.reserve(r.papers.size());
			for (const auto& pid : r.papers)
				v.push_back(papers_.at(pid).citations);
			return v;
		}

		/// Adds a researcher with no papers. Any citation totals or h-index on the
		/// argument are reset; papers attach through publish_paper only.
		void add_researcher(ResearcherNode r)
		{
			if (r.id.value.empty())
				throw ModelError("researcher id must not be empty");
			if (researchers_.contains(r.id))
				throw ModelError(fmt::format("duplicate researcher id '{}'", r.id.value));
			if (papers_.contains(PaperId{r.id.value}))
				throw ModelError(fmt::format("researcher id '{}' collides with a paper id", r.id.value));
			if (!r.papers.empty())
				throw ModelError(fmt::format("researcher '{}' must be added without papers", r.id.value));

			r.total_cites = 0;
			r.h_index = 0;
			r.pos = bounds_.clamp({r.pos.x, 0.0});
			order_.push_back(r.id);
			auto id = r.id;
			researchers_.emplace(std::move(id), std::move(r));
		}

		/// Attaches a freshly published paper to its owner.
		void publish_paper(const ResearcherId& rid, PaperNode p)
		{
			auto rit = researchers_.find(rid);
			if (rit == researchers_.end())
				throw ModelError(fmt::format("unknown researcher '{}'", rid.value));
			if (p.id.value.empty())
				throw ModelError("paper id must not be empty");
			if (papers_.contains(p.id))
				throw ModelError(fmt::format("duplicate paper id '{}'", p.id.value));
			if (researchers_.contains(ResearcherId{p.id.value}))
				throw ModelError(fmt::format("paper id '{}' collides with a researcher id", p.id.value));
			if (p.owner != rid)
				throw ModelError(fmt::format("paper '{}' is owned by '{}', not '{}'", p.id.value, p.owner.value,
				                             rid.value));
			if (!(p.tend_to_be_cited >= min_tendency && p.tend_to_be_cited <= max_tendency))
				throw ModelError(fmt::format("paper '{}' tendency {} outside [{}, {}]", p.id.value,
				                             p.tend_to_be_cited, min_tendency, max_tendency));
			if (p.pos && !bounds_.contains(*p.pos))
				throw ModelError(fmt::format("paper '{}' placed outside world bounds", p.id.value));

			auto& r = rit->second;
			const auto cites = p.citations;
			auto id = p.id;
			edges_.insert(Edge{rid, id});
			r.papers.push_back(id);
			papers_.emplace(std::move(id), std::move(p));
			r.total_cites += cites;
			refresh_h_index(r);
		}

		/// Records `delta` additional citations of a paper. Citations never decrease.
		void add_citations(const PaperId& pid, CitationCount delta)
		{
			auto pit = papers_.find(pid);
			if (pit == papers_.end())
				throw ModelError(fmt::format("unknown paper '{}'", pid.value));
			if (delta == 0)
				return;
			pit->second.citations += delta;
			auto& r = researchers_.at(pit->second.owner);
			r.total_cites += delta;
			refresh_h_index(r);
		}

		/// Sets the horizontal slot of a researcher; y stays bound to the h-index.
		void set_researcher_x(const ResearcherId& rid, double x)
		{
			auto it = researchers_.find(rid);
			if (it == researchers_.end())
				throw ModelError(fmt::format("unknown researcher '{}'", rid.value));
			if (!(x >= bounds_.min_x && x <= bounds_.max_x))
				throw ModelError(fmt::format("researcher '{}' x = {} outside world bounds", rid.value, x));
			it->second.pos.x = x;
		}

		void set_paper_pos(const PaperId& pid, std::optional<Point> pos)
		{
			auto it = papers_.find(pid);
			if (it == papers_.end())
				throw ModelError(fmt::format("unknown paper '{}'", pid.value));
			if (pos && !bounds_.contains(*pos))
				throw ModelError(fmt::format("paper '{}' placed outside world bounds", pid.value));
			it->second.pos = pos;
		}

		/// y coordinate a researcher with the given h-index must occupy.
		[[nodiscard]] auto h_row(std::uint64_t h) const -> double
		{
			return std::clamp(static_cast<double>(h), bounds_.min_y, bounds_.max_y);
		}

		friend bool operator==(const Tcln&, const Tcln&) = default;

	private:
		void refresh_h_index(ResearcherNode& r)
		{
			CitationVector v;
			v.reserve(r.papers.size());
			for (const auto& pid : r.papers)
				v.push_back(papers_.at(pid).citations);
			r.h_index = compute_h_index(v);
			r.pos.y = h_row(r.h_index);
		}

		WorldBounds bounds_;
		std::map<ResearcherId, ResearcherNode> researchers_;
		std::map<PaperId, PaperNode> papers_;
		std::set<Edge> edges_;
		std::vector<ResearcherId> order_;
	};

	struct AuditReport
	{
		std::vector<std::string> violations;

		[[nodiscard]] bool ok() const { return violations.empty(); }
	};

	/// Re-derives every structural and state invariant of the graph from scratch.
	[[nodiscard]] inline auto audit(const Tcln& g) -> AuditReport
	{
		AuditReport report;
		auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

		const auto& researchers = g.researchers();
		const auto& papers = g.papers();
		const auto& bounds = g.bounds();

		if (!bounds.valid())
			fail("world bounds are degenerate");

		if (g.edges().size() != papers.size())
			fail(fmt::format("edge count {} differs from paper count {}", g.edges().size(), papers.size()));

		std::map<PaperId, std::size_t> incidence;
		for (const auto& e : g.edges())
		{
			auto rit = researchers.find(e.researcher);
			auto pit = papers.find(e.paper);
			if (rit == researchers.end() || pit == papers.end())
			{
				fail(fmt::format("edge ({}, {}) does not join a researcher and a paper", e.researcher.value,
				                 e.paper.value));
				continue;
			}
			++incidence[e.paper];
			if (pit->second.owner != e.researcher)
				fail(fmt::format("edge ({}, {}) disagrees with paper owner '{}'", e.researcher.value, e.paper.value,
				                 pit->second.owner.value));
			if (std::ranges::find(rit->second.papers, e.paper) == rit->second.papers.end())
				fail(fmt::format("edge ({}, {}) missing from researcher paper list", e.researcher.value,
				                 e.paper.value));
		}

		for (const auto& [pid, p] : papers)
		{
			if (p.id != pid)
				fail(fmt::format("paper keyed '{}' carries id '{}'", pid.value, p.id.value));
			if (researchers.contains(ResearcherId{pid.value}))
				fail(fmt::format("id '{}' names both a researcher and a paper", pid.value));
			if (auto n = incidence[pid]; n != 1)
				fail(fmt::format("paper '{}' has {} incident edges", pid.value, n));
			if (!(p.tend_to_be_cited >= min_tendency && p.tend_to_be_cited <= max_tendency))
				fail(fmt::format("paper '{}' tendency {} out of range", pid.value, p.tend_to_be_cited));
			if (p.pos && !bounds.contains(*p.pos))
				fail(fmt::format("paper '{}' lies outside world bounds", pid.value));
			if (!researchers.contains(p.owner))
				fail(fmt::format("paper '{}' owner '{}' does not exist", pid.value, p.owner.value));
		}

		std::set<PaperId> claimed;
		for (const auto& [rid, r] : researchers)
		{
			if (r.id != rid)
				fail(fmt::format("researcher keyed '{}' carries id '{}'", rid.value, r.id.value));

			CitationVector v;
			for (const auto& pid : r.papers)
			{
				if (!claimed.insert(pid).second)
					fail(fmt::format("paper '{}' listed more than once", pid.value));
				auto pit = papers.find(pid);
				if (pit == papers.end())
				{
					fail(fmt::format("researcher '{}' lists unknown paper '{}'", rid.value, pid.value));
					continue;
				}
				if (pit->second.owner != rid)
					fail(fmt::format("researcher '{}' lists paper '{}' owned by '{}'", rid.value, pid.value,
					                 pit->second.owner.value));
				if (!g.edges().contains(Edge{rid, pid}))
					fail(fmt::format("researcher '{}' paper '{}' has no edge", rid.value, pid.value));
				v.push_back(pit->second.citations);
			}

			if (auto total = total_citations(v); total != r.total_cites)
				fail(fmt::format("researcher '{}' total_cites {} but papers sum to {}", rid.value, r.total_cites,
				                 total));
			if (auto h = compute_h_index(v); h != r.h_index)
				fail(fmt::format("researcher '{}' cached h-index {} but recomputed {}", rid.value, r.h_index, h));
			if (!bounds.contains(r.pos))
				fail(fmt::format("researcher '{}' lies outside world bounds", rid.value));
			if (r.pos.y != g.h_row(r.h_index))
				fail(fmt::format("researcher '{}' y = {} does not match h-index {}", rid.value, r.pos.y, r.h_index));
		}

		const auto& order = g.researcher_order();
		if (order.size() != researchers.size() ||
		    std::set<ResearcherId>(order.begin(), order.end()).size() != order.size() ||
		    !std::ranges::all_of(order, [&](const auto& id) { return researchers.contains(id); }))
			fail("researcher insertion order is not a permutation of the researcher set");

		return report;
	}
}
