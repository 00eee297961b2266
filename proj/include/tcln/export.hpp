#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "complexity.hpp"
#include "error.hpp"
#include "model.hpp"

namespace tcln
{
	enum class ExportFormat
	{
		json,
		dot,
		pajek,
	};

	[[nodiscard]] inline auto parse_export_format(std::string_view tag) -> ExportFormat
	{
		if (tag == "json")
			return ExportFormat::json;
		if (tag == "dot")
			return ExportFormat::dot;
		if (tag == "pajek" || tag == "net")
			return ExportFormat::pajek;
		throw FormatError(fmt::format("unknown export format '{}' (expected json, dot or pajek)", tag));
	}

	inline constexpr int graph_json_version = 1;

	/// Researcher display label: paper count, then h-index.
	[[nodiscard]] inline auto researcher_display(const ResearcherNode& r) -> std::string
	{
		return fmt::format("{} / {}", r.papers.size(), r.h_index);
	}

	namespace detail
	{
		/// Node in canonical (id-sorted) order, researchers and papers interleaved.
		using NodeRef = std::variant<const ResearcherNode*, const PaperNode*>;

		inline auto sorted_nodes(const Tcln& g) -> std::vector<std::pair<std::string_view, NodeRef>>
		{
			std::vector<std::pair<std::string_view, NodeRef>> nodes;
			nodes.reserve(g.node_count());
			for (const auto& [id, r] : g.researchers())
				nodes.emplace_back(id.value, &r);
			for (const auto& [id, p] : g.papers())
				nodes.emplace_back(id.value, &p);
			std::ranges::sort(nodes, {}, &std::pair<std::string_view, NodeRef>::first);
			return nodes;
		}

		inline auto coord(double v) -> std::string
		{
			auto s = fmt::format("{:.4f}", v);
			return s == "-0.0000" ? "0.0000" : s;
		}

		inline auto dot_quote(std::string_view s) -> std::string
		{
			std::string out = "\"";
			for (char c : s)
			{
				if (c == '"' || c == '\\')
					out += '\\';
				out += c;
			}
			return out + '"';
		}

		inline auto pajek_quote(std::string_view s) -> std::string
		{
			std::string out(s);
			std::ranges::replace(out, '"', '\'');
			return "\"" + out + "\"";
		}
	}

	/// Canonical JSON document: keys sorted, nodes sorted by id, edges sorted.
	[[nodiscard]] inline auto graph_to_json(const Tcln& g) -> nlohmann::json
	{
		using nlohmann::json;
		const auto& b = g.bounds();

		std::map<ResearcherId, std::size_t> order;
		for (const auto& id : g.researcher_order())
			order.emplace(id, order.size());

		json researchers = json::array();
		for (const auto& [id, r] : g.researchers())
		{
			json papers = json::array();
			for (const auto& pid : r.papers)
				papers.push_back(pid.value);
			researchers.push_back({
			    {"id", id.value},
			    {"label", r.label},
			    {"display", researcher_display(r)},
			    {"order", order.at(id)},
			    {"papers", std::move(papers)},
			    {"total_cites", r.total_cites},
			    {"h_index", r.h_index},
			    {"x", r.pos.x},
			    {"y", r.pos.y},
			});
		}

		json papers = json::array();
		for (const auto& [id, p] : g.papers())
		{
			papers.push_back({
			    {"id", id.value},
			    {"owner", p.owner.value},
			    {"label", fmt::format("{}", p.citations)},
			    {"pub_year", p.pub_year},
			    {"citations", p.citations},
			    {"tend_to_be_cited", p.tend_to_be_cited},
			    {"x", p.pos ? json(p.pos->x) : json(nullptr)},
			    {"y", p.pos ? json(p.pos->y) : json(nullptr)},
			});
		}

		json edges = json::array();
		for (const auto& e : g.edges())
			edges.push_back(json::array({e.researcher.value, e.paper.value}));

		return {
		    {"version", graph_json_version},
		    {"bounds", {{"min_x", b.min_x}, {"max_x", b.max_x}, {"min_y", b.min_y}, {"max_y", b.max_y}}},
		    {"researchers", std::move(researchers)},
		    {"papers", std::move(papers)},
		    {"edges", std::move(edges)},
		};
	}

	/// Rebuilds a graph by replaying add_researcher / publish_paper, then checks that
	/// every stored derived value (totals, h-index, y, edges) agrees with the replay.
	[[nodiscard]] inline auto graph_from_json(const nlohmann::json& doc) -> Tcln
	{
		try
		{
			if (!doc.is_object())
				throw FormatError("graph document must be a JSON object");
			if (doc.at("version").get<int>() != graph_json_version)
				throw FormatError(fmt::format("unsupported graph version {}", doc.at("version").dump()));

			const auto& jb = doc.at("bounds");
			WorldBounds bounds{jb.at("min_x").get<double>(), jb.at("max_x").get<double>(),
			                   jb.at("min_y").get<double>(), jb.at("max_y").get<double>()};
			if (!bounds.valid())
				throw FormatError("graph bounds are degenerate");
			Tcln g{bounds};

			const auto& jr = doc.at("researchers");
			const auto& jp = doc.at("papers");
			if (!jr.is_array() || !jp.is_array() || !doc.at("edges").is_array())
				throw FormatError("researchers, papers and edges must be arrays");

			std::map<std::string, const nlohmann::json*> paper_docs;
			for (const auto& p : jp)
				if (!paper_docs.emplace(p.at("id").get<std::string>(), &p).second)
					throw FormatError(fmt::format("duplicate paper id '{}'", p.at("id").get<std::string>()));

			std::vector<const nlohmann::json*> by_order(jr.size(), nullptr);
			for (const auto& r : jr)
			{
				auto pos = r.at("order").get<std::size_t>();
				if (pos >= by_order.size() || by_order[pos])
					throw FormatError("researcher order is not a permutation");
				by_order[pos] = &r;
			}

			for (const auto* r : by_order)
			{
				ResearcherNode node;
				node.id = ResearcherId{r->at("id").get<std::string>()};
				node.label = r->at("label").get<std::string>();
				g.add_researcher(node);
				g.set_researcher_x(node.id, r->at("x").get<double>());
			}

			std::size_t attached = 0;
			for (const auto* r : by_order)
			{
				const ResearcherId rid{r->at("id").get<std::string>()};
				for (const auto& pid_json : r->at("papers"))
				{
					const auto pid = pid_json.get<std::string>();
					auto it = paper_docs.find(pid);
					if (it == paper_docs.end())
						throw FormatError(fmt::format("researcher '{}' lists unknown paper '{}'", rid.value, pid));
					const auto& p = *it->second;
					PaperNode node;
					node.id = PaperId{pid};
					node.owner = ResearcherId{p.at("owner").get<std::string>()};
					node.pub_year = p.at("pub_year").get<int>();
					node.citations = p.at("citations").get<CitationCount>();
					node.tend_to_be_cited = p.at("tend_to_be_cited").get<double>();
					const auto& x = p.at("x");
					const auto& y = p.at("y");
					if (x.is_null() != y.is_null())
						throw FormatError(fmt::format("paper '{}' has only one coordinate", pid));
					if (!x.is_null())
						node.pos = Point{x.get<double>(), y.get<double>()};
					g.publish_paper(rid, std::move(node));
					++attached;
				}
			}
			if (attached != paper_docs.size())
				throw FormatError("some papers are not listed by their owner");

			for (const auto* r : by_order)
			{
				const auto& node = g.researcher(ResearcherId{r->at("id").get<std::string>()});
				if (r->at("total_cites").get<CitationCount>() != node.total_cites ||
				    r->at("h_index").get<std::uint64_t>() != node.h_index || r->at("y").get<double>() != node.pos.y)
					throw FormatError(fmt::format("researcher '{}' totals disagree with its papers", node.id.value));
			}

			std::set<Edge> edges;
			for (const auto& e : doc.at("edges"))
			{
				if (!e.is_array() || e.size() != 2)
					throw FormatError("edge must be a [researcher, paper] pair");
				edges.insert(Edge{ResearcherId{e[0].get<std::string>()}, PaperId{e[1].get<std::string>()}});
			}
			if (edges != g.edges())
				throw FormatError("edge list disagrees with paper ownership");

			return g;
		}
		catch (const nlohmann::json::exception& e)
		{
			throw FormatError(fmt::format("malformed graph JSON: {}", e.what()));
		}
		catch (const ModelError& e)
		{
			throw FormatError(fmt::format("graph JSON violates model invariants: {}", e.what()));
		}
	}

	[[nodiscard]] inline auto graph_from_json_text(std::string_view text) -> Tcln
	{
		auto doc = nlohmann::json::parse(text, nullptr, false);
		if (doc.is_discarded())
			throw FormatError("graph file is not valid JSON");
		return graph_from_json(doc);
	}

	[[nodiscard]] inline auto to_pajek(const Tcln& g) -> std::string
	{
		const auto nodes = detail::sorted_nodes(g);
		std::map<std::string_view, std::size_t> index;

		std::string out = fmt::format("*Vertices {}\n", nodes.size());
		for (const auto& [id, ref] : nodes)
		{
			index.emplace(id, index.size() + 1);
			Point p{};
			if (auto r = std::get_if<const ResearcherNode*>(&ref))
				p = (*r)->pos;
			else if (auto pp = std::get<const PaperNode*>(ref); pp->pos)
				p = *pp->pos;
			out += fmt::format("{} {} {} {}\n", index.size(), detail::pajek_quote(id), detail::coord(p.x),
			                   detail::coord(p.y));
		}

		std::vector<std::pair<std::size_t, std::size_t>> edges;
		for (const auto& e : g.edges())
			edges.emplace_back(index.at(e.researcher.value), index.at(e.paper.value));
		std::ranges::sort(edges);

		out += "*Edges\n";
		for (const auto& [a, b] : edges)
			out += fmt::format("{} {}\n", a, b);
		return out;
	}

	[[nodiscard]] inline auto to_dot(const Tcln& g) -> std::string
	{
		std::string out = "graph tcln {\n";
		for (const auto& [id, ref] : detail::sorted_nodes(g))
		{
			if (auto r = std::get_if<const ResearcherNode*>(&ref))
			{
				const auto& node = **r;
				out += fmt::format("  {} [shape=box, label={}, pos=\"{},{}!\"];\n", detail::dot_quote(id),
				                   detail::dot_quote(researcher_display(node)), detail::coord(node.pos.x),
				                   detail::coord(node.pos.y));
			}
			else
			{
				const auto& node = *std::get<const PaperNode*>(ref);
				out += fmt::format("  {} [shape=circle, label=\"{}\"", detail::dot_quote(id), node.citations);
				if (node.pos)
					out += fmt::format(", pos=\"{},{}!\"", detail::coord(node.pos->x), detail::coord(node.pos->y));
				out += "];\n";
			}
		}
		for (const auto& e : g.edges())
			out += fmt::format("  {} -- {};\n", detail::dot_quote(e.researcher.value), detail::dot_quote(e.paper.value));
		out += "}\n";
		return out;
	}

	[[nodiscard]] inline auto export_graph(const Tcln& g, ExportFormat format) -> std::string
	{
		switch (format)
		{
		case ExportFormat::json: return graph_to_json(g).dump(2) + "\n";
		case ExportFormat::dot: return to_dot(g);
		case ExportFormat::pajek: return to_pajek(g);
		}
		throw FormatError("unknown export format");
	}

	[[nodiscard]] inline auto complexity_to_json(const ComplexityReport& r) -> nlohmann::json
	{
		return {
		    {"researchers", r.researchers},
		    {"papers", r.papers},
		    {"citations", r.citations},
		    {"tcln_nodes", r.tcln_nodes},
		    {"tcln_edges", r.tcln_edges},
		    {"trad_nodes", r.trad_nodes},
		    {"trad_edges", r.trad_edges},
		    {"trad_citation_edges", r.trad_citation_edges},
		    {"m_avg", r.m_avg},
		    {"n_avg", r.n_avg},
		    {"edge_ratio", r.edge_ratio},
		    {"node_ratio", r.node_ratio},
		};
	}
}
