#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "error.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "trajectory.hpp"

namespace tcln
{
	struct SimulationConfig
	{
		std::int64_t n_researchers = 60;
		std::int64_t max_init_papers = 10;
		std::int64_t years = 10;
		std::uint64_t seed = 42;
		double citation_rate_scale = 1.0;
		std::int64_t max_new_papers_per_year = 1;
		std::int64_t new_researchers_per_year = 0;
		/// Calendar year of tick 0.
		int start_year = 0;
		WorldBounds bounds{};

		void validate() const
		{
			if (n_researchers < 1)
				throw ConfigError(fmt::format("n_researchers must be >= 1 (got {})", n_researchers));
			if (max_init_papers < 1)
				throw ConfigError(fmt::format("max_init_papers must be >= 1 (got {})", max_init_papers));
			if (years < 0)
				throw ConfigError(fmt::format("years must be >= 0 (got {})", years));
			if (!(std::isfinite(citation_rate_scale) && citation_rate_scale >= 0.0))
				throw ConfigError(fmt::format("citation_rate_scale must be finite and >= 0 (got {})",
				                              citation_rate_scale));
			if (max_new_papers_per_year < 0)
				throw ConfigError(fmt::format("max_new_papers_per_year must be >= 0 (got {})",
				                              max_new_papers_per_year));
			if (new_researchers_per_year < 0)
				throw ConfigError(fmt::format("new_researchers_per_year must be >= 0 (got {})",
				                              new_researchers_per_year));
			if (!bounds.valid())
				throw ConfigError("world bounds must satisfy min < max on both axes");
		}

		friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
	};

	struct SimState
	{
		Tcln graph;
		std::int64_t tick = 0;
		Rng rng;
		std::int64_t researchers_created = 0;

		[[nodiscard]] auto year(const SimulationConfig& cfg) const -> int
		{
			return cfg.start_year + static_cast<int>(tick);
		}

		friend bool operator==(const SimState&, const SimState&) = default;
	};

	namespace detail
	{
		inline auto researcher_id(std::int64_t index) -> ResearcherId
		{
			return ResearcherId{fmt::format("r{}", index)};
		}

		inline auto paper_id(const ResearcherId& owner, std::size_t index) -> PaperId
		{
			return PaperId{fmt::format("{}-p{}", owner.value, index)};
		}

		inline void spawn_researcher(SimState& s)
		{
			auto id = researcher_id(++s.researchers_created);
			ResearcherNode r;
			r.label = id.value;
			r.id = std::move(id);
			s.graph.add_researcher(std::move(r));
		}

		/// Hatches `count` papers for a researcher. Seeded papers draw an initial
		/// citation count in [0, 9]; papers born during the run start uncited.
		inline void make_papers(SimState& s, const ResearcherId& owner, std::uint64_t count, bool seeded, int year)
		{
			for (std::uint64_t k = 0; k < count; ++k)
			{
				PaperNode p;
				p.id = paper_id(owner, s.graph.researcher(owner).papers.size() + 1);
				p.owner = owner;
				p.pub_year = year;
				p.tend_to_be_cited = static_cast<double>(s.rng.below(100) + 1) / 100.0;
				p.citations = seeded ? s.rng.below(10) : 0;
				s.graph.publish_paper(owner, std::move(p));
			}
		}
	}

	/// Creates the initial population: each researcher draws a paper count uniformly
	/// from {0, ..., max_init_papers - 1} and hatches that many seeded papers.
	[[nodiscard]] inline auto init_random_researchers(const SimulationConfig& cfg) -> SimState
	{
		cfg.validate();
		SimState s{Tcln{cfg.bounds}, 0, Rng{cfg.seed}, 0};
		for (std::int64_t i = 0; i < cfg.n_researchers; ++i)
		{
			detail::spawn_researcher(s);
			const auto& id = s.graph.researcher_order().back();
			const auto count = s.rng.below(static_cast<std::uint64_t>(cfg.max_init_papers));
			detail::make_papers(s, id, count, true, s.year(cfg));
		}
		return s;
	}

	/// Advances one year: existing papers accrue Poisson(scale * tendency) citations,
	/// every existing researcher publishes 0..max_new_papers_per_year uncited papers,
	/// then new researchers (with no papers) join.
	///
	/// Draw order is fixed: researchers in insertion order, papers in publication order.
	inline void step_year(SimState& s, const SimulationConfig& cfg)
	{
		++s.tick;
		const auto researchers = s.graph.researcher_order();

		for (const auto& rid : researchers)
		{
			const auto papers = s.graph.researcher(rid).papers;
			for (const auto& pid : papers)
			{
				const double mean = cfg.citation_rate_scale * s.graph.paper(pid).tend_to_be_cited;
				s.graph.add_citations(pid, s.rng.poisson(mean));
			}
		}

		const auto max_new = static_cast<std::uint64_t>(cfg.max_new_papers_per_year);
		for (const auto& rid : researchers)
			detail::make_papers(s, rid, s.rng.below(max_new + 1), false, s.year(cfg));

		for (std::int64_t i = 0; i < cfg.new_researchers_per_year; ++i)
			detail::spawn_researcher(s);
	}

	/// Snapshot of one researcher: citations sorted descending, ties broken by paper id.
	[[nodiscard]] inline auto snapshot_point(const Tcln& g, const ResearcherId& rid, int year) -> TrajectoryPoint
	{
		const auto& r = g.researcher(rid);
		std::vector<std::pair<CitationCount, PaperId>> rows;
		rows.reserve(r.papers.size());
		for (const auto& pid : r.papers)
			rows.emplace_back(g.paper(pid).citations, pid);
		std::ranges::sort(rows, [](const auto& a, const auto& b) {
			return a.first != b.first ? a.first > b.first : a.second < b.second;
		});

		TrajectoryPoint pt;
		pt.year = year;
		for (auto& [c, pid] : rows)
		{
			pt.citations.push_back(c);
			pt.paper_ids.push_back(std::move(pid));
		}
		pt.h = r.h_index;
		return pt;
	}

	struct RunResult
	{
		Tcln graph;
		std::vector<ResearcherTrajectory> trajectories; ///< researcher insertion order
	};

	/// Called with the state at every tick boundary, including tick 0.
	using TickObserver = std::function<void(const SimState&)>;

	[[nodiscard]] inline auto run(const SimulationConfig& cfg, const TickObserver& observe = {}) -> RunResult
	{
		auto s = init_random_researchers(cfg);

		std::vector<ResearcherTrajectory> trajectories;
		std::map<ResearcherId, std::size_t> slot;
		auto record = [&] {
			for (const auto& rid : s.graph.researcher_order())
			{
				auto [it, fresh] = slot.try_emplace(rid, trajectories.size());
				if (fresh)
					trajectories.push_back({rid, {}});
				trajectories[it->second].points.push_back(snapshot_point(s.graph, rid, s.year(cfg)));
			}
			if (observe)
				observe(s);
		};

		record();
		for (std::int64_t t = 0; t < cfg.years; ++t)
		{
			step_year(s, cfg);
			record();
		}
		return {std::move(s.graph), std::move(trajectories)};
	}
}
