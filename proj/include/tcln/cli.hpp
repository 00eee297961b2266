#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "tcln.hpp"

namespace tcln::cli
{
	inline constexpr int exit_ok = 0;
	inline constexpr int exit_failure = 1;
	inline constexpr int exit_usage = 2;

	/// Environment variable naming the default output directory of `simulate`.
	inline constexpr const char* out_dir_env = "TCLN_OUT_DIR";

	/// Failure that maps to the usage exit code.
	class UsageError : public Error
	{
	public:
		using Error::Error;
	};

	namespace detail
	{
		inline auto one_line(std::string s) -> std::string
		{
			std::ranges::replace(s, '\n', ' ');
			std::ranges::replace(s, '\r', ' ');
			return s;
		}

		inline auto read_file(const std::filesystem::path& path) -> std::string
		{
			std::ifstream in(path, std::ios::binary);
			if (!in)
				throw Error(fmt::format("cannot open '{}'", path.string()));
			std::ostringstream ss;
			ss << in.rdbuf();
			return ss.str();
		}

		inline void write_file(const std::filesystem::path& path, std::string_view content)
		{
			if (path.has_parent_path())
				std::filesystem::create_directories(path.parent_path());
			std::ofstream out(path, std::ios::binary | std::ios::trunc);
			if (!out)
				throw Error(fmt::format("cannot write '{}'", path.string()));
			out << content;
			if (!out)
				throw Error(fmt::format("write to '{}' failed", path.string()));
		}

		inline auto snapshot_name(int year, ExportFormat format) -> std::string
		{
			const char* ext = format == ExportFormat::json ? "json" : format == ExportFormat::dot ? "dot" : "net";
			return fmt::format("year_{:04d}.{}", year, ext);
		}

		/// Reads a SimulationConfig from a JSON object. Unknown keys are rejected.
		inline void apply_config_json(const nlohmann::json& doc, SimulationConfig& cfg)
		{
			if (!doc.is_object())
				throw UsageError("config file must hold a JSON object");
			try
			{
				for (const auto& [key, value] : doc.items())
				{
					if (key == "n_researchers")
						cfg.n_researchers = value.get<std::int64_t>();
					else if (key == "max_init_papers")
						cfg.max_init_papers = value.get<std::int64_t>();
					else if (key == "years")
						cfg.years = value.get<std::int64_t>();
					else if (key == "seed")
						cfg.seed = value.get<std::uint64_t>();
					else if (key == "citation_rate_scale")
						cfg.citation_rate_scale = value.get<double>();
					else if (key == "max_new_papers_per_year")
						cfg.max_new_papers_per_year = value.get<std::int64_t>();
					else if (key == "new_researchers_per_year")
						cfg.new_researchers_per_year = value.get<std::int64_t>();
					else if (key == "start_year")
						cfg.start_year = value.get<int>();
					else if (key == "bounds")
						cfg.bounds = WorldBounds{value.at("min_x").get<double>(), value.at("max_x").get<double>(),
						                         value.at("min_y").get<double>(), value.at("max_y").get<double>()};
					else
						throw UsageError(fmt::format("unknown config key '{}'", key));
				}
			}
			catch (const nlohmann::json::exception& e)
			{
				throw UsageError(fmt::format("bad config value: {}", e.what()));
			}
		}

		inline auto trajectory_csv(const std::vector<ResearcherTrajectory>& runs) -> std::string
		{
			std::string out = "researcher_id,year,papers,total_cites,h\n";
			for (const auto& rt : runs)
				for (const auto& pt : rt.points)
					out += fmt::format("{},{},{},{},{}\n", rt.researcher.value, pt.year, pt.citations.size(),
					                   total_citations(pt.citations), pt.h);
			return out;
		}

		inline auto replay_csv(const Trajectory& t) -> std::string
		{
			std::string out = "year,h,papers,total_cites\n";
			for (const auto& pt : t)
				out += fmt::format("{},{},{},{}\n", pt.year, pt.h, pt.citations.size(), total_citations(pt.citations));
			return out;
		}

		/// Parses comma or whitespace separated non-negative integers.
		inline auto parse_cites(std::string_view text) -> CitationVector
		{
			CitationVector v;
			std::string token;
			auto flush = [&] {
				if (token.empty())
					return;
				CitationCount c = 0;
				if (!tcln::detail::parse_int(std::string_view(token), c))
					throw UsageError(fmt::format("'{}' is not a non-negative integer", token));
				v.push_back(c);
				token.clear();
			};
			for (char ch : text)
			{
				if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r')
					flush();
				else
					token += ch;
			}
			flush();
			return v;
		}

		inline auto format_report_table(const ComplexityReport& r) -> std::string
		{
			std::string out = fmt::format("{:<22}{:>14}{:>14}\n", "metric", "tcln", "traditional");
			out += fmt::format("{:<22}{:>14}{:>14}\n", "nodes", r.tcln_nodes, r.trad_nodes);
			out += fmt::format("{:<22}{:>14}{:>14}\n", "edges", r.tcln_edges, r.trad_edges);
			out += fmt::format("{:<22}{:>14}{:>14}\n", "citation_edges", 0, r.trad_citation_edges);
			out += fmt::format("{:<22}{:>14}\n", "researchers", r.researchers);
			out += fmt::format("{:<22}{:>14}\n", "papers", r.papers);
			out += fmt::format("{:<22}{:>14}\n", "citations", r.citations);
			out += fmt::format("{:<22}{:>14.4f}\n", "m_avg", r.m_avg);
			out += fmt::format("{:<22}{:>14.4f}\n", "n_avg", r.n_avg);
			out += fmt::format("{:<22}{:>14.4f}\n", "edge_ratio", r.edge_ratio);
			out += fmt::format("{:<22}{:>14.4f}\n", "node_ratio", r.node_ratio);
			return out;
		}
	}

	/// Runs one CLI invocation. `args` excludes the program name. Data goes to `out`,
	/// diagnostics to `err`; failures print a single `error: <kind>: <message>` line.
	inline auto run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
	    -> int
	{
		CLI::App app{"Temporal cognitive level network toolkit: simulate, replay and export researcher/paper "
		             "networks",
		             "tcln"};
		app.require_subcommand(1);
		app.set_help_all_flag("--help-all", "Show help for every subcommand");

		// simulate
		SimulationConfig sim_cfg;
		std::string sim_out;
		std::string sim_config;
		bool sim_snapshots = false;
		auto* simulate = app.add_subcommand("simulate", "Generate random researchers and evolve them year by year");
		auto* o_researchers = simulate->add_option("--researchers", sim_cfg.n_researchers, "Initial researchers")
		                          ->capture_default_str();
		auto* o_max_init = simulate->add_option("--max-init-papers", sim_cfg.max_init_papers,
		                                        "Initial paper count is drawn from 0..value-1")
		                       ->capture_default_str();
		auto* o_years = simulate->add_option("--years", sim_cfg.years, "Years to simulate")->capture_default_str();
		auto* o_seed = simulate->add_option("--seed", sim_cfg.seed, "Random seed")->capture_default_str();
		auto* o_scale = simulate->add_option("--citation-rate-scale", sim_cfg.citation_rate_scale,
		                                     "Yearly citations per paper ~ Poisson(scale * tendency)")
		                    ->capture_default_str();
		auto* o_new_papers = simulate->add_option("--max-new-papers", sim_cfg.max_new_papers_per_year,
		                                          "Each researcher publishes 0..value papers per year")
		                         ->capture_default_str();
		auto* o_new_researchers = simulate->add_option("--new-researchers", sim_cfg.new_researchers_per_year,
		                                               "Researchers joining each year")
		                              ->capture_default_str();
		auto* o_start_year = simulate->add_option("--start-year", sim_cfg.start_year, "Calendar year of tick 0")
		                         ->capture_default_str();
		simulate->add_option("--out", sim_out,
		                     fmt::format("Output directory (default: ${} or 'run')", out_dir_env));
		simulate->add_option("--config", sim_config,
		                     "JSON file with SimulationConfig keys; explicit flags take precedence");
		simulate->add_flag("--snapshots", sim_snapshots, "Also write snapshots/year_YYYY.net for every year");

		// replay
		std::string rp_input;
		std::string rp_format = "long";
		std::optional<int> rp_from;
		std::optional<int> rp_to;
		std::string rp_label = "researcher";
		std::string rp_out;
		bool rp_snapshots = false;
		std::string rp_snapshot_format = "pajek";
		auto* replay = app.add_subcommand("replay", "Rebuild a researcher's yearly h-index from citation records");
		replay->add_option("--input", rp_input, "Citation record CSV")->required();
		replay->add_option("--format", rp_format, "Record format: long (paper_id,year,cumulative_citations) or "
		                                          "vectors (year,citations)")
		    ->check(CLI::IsMember({"long", "vectors"}))
		    ->capture_default_str();
		replay->add_option("--from", rp_from, "First year (default: earliest record)");
		replay->add_option("--to", rp_to, "Last year (default: latest record)");
		replay->add_option("--label", rp_label, "Researcher label in snapshots")->capture_default_str();
		replay->add_option("--out", rp_out, "Write trajectory.csv (and snapshots/) here instead of stdout");
		replay->add_flag("--snapshots", rp_snapshots, "Write one laid-out graph per year to <out>/snapshots/");
		replay->add_option("--snapshot-format", rp_snapshot_format, "Snapshot format: json, dot or pajek")
		    ->check(CLI::IsMember({"json", "dot", "pajek"}))
		    ->capture_default_str();

		// hindex
		std::optional<std::string> hi_cites;
		auto* hindex = app.add_subcommand("hindex", "Print the h-index of a citation vector");
		hindex->add_option("--cites", hi_cites, "Comma separated citation counts (default: read stdin)");

		// export
		std::string ex_input;
		std::string ex_format = "json";
		std::string ex_output;
		auto* exporter = app.add_subcommand("export", "Lay out a graph JSON file and write it as json, dot or pajek");
		exporter->add_option("--input", ex_input, "Graph JSON file")->required();
		exporter->add_option("--format", ex_format, "json, dot or pajek")
		    ->check(CLI::IsMember({"json", "dot", "pajek"}))
		    ->capture_default_str();
		exporter->add_option("--output", ex_output, "Output file (default: stdout)");

		// compare
		std::string cmp_input;
		bool cmp_json = false;
		auto* compare = app.add_subcommand("compare", "Compare TCLN size with a traditional citation network");
		compare->add_option("--input", cmp_input, "Graph JSON file")->required();
		compare->add_flag("--json", cmp_json, "Print the report as JSON");

		auto fail = [&](std::string_view kind, const std::string& msg, int code) {
			err << "error: " << kind << ": " << detail::one_line(msg) << '\n';
			return code;
		};

		try
		{
			std::vector<std::string> reversed(args.rbegin(), args.rend());
			app.parse(reversed);
		}
		catch (const CLI::CallForHelp&)
		{
			out << app.help();
			return exit_ok;
		}
		catch (const CLI::CallForAllHelp&)
		{
			out << app.help("", CLI::AppFormatMode::All);
			return exit_ok;
		}
		catch (const CLI::ParseError& e)
		{
			return fail("usage", e.what(), exit_usage);
		}

		try
		{
			if (simulate->parsed())
			{
				SimulationConfig cfg;
				if (!sim_config.empty())
				{
					auto doc = nlohmann::json::parse(detail::read_file(sim_config), nullptr, false);
					if (doc.is_discarded())
						throw UsageError(fmt::format("config '{}' is not valid JSON", sim_config));
					detail::apply_config_json(doc, cfg);
				}
				auto take = [](CLI::Option* opt, auto& dst, const auto& src) {
					if (opt->count() > 0)
						dst = src;
				};
				take(o_researchers, cfg.n_researchers, sim_cfg.n_researchers);
				take(o_max_init, cfg.max_init_papers, sim_cfg.max_init_papers);
				take(o_years, cfg.years, sim_cfg.years);
				take(o_seed, cfg.seed, sim_cfg.seed);
				take(o_scale, cfg.citation_rate_scale, sim_cfg.citation_rate_scale);
				take(o_new_papers, cfg.max_new_papers_per_year, sim_cfg.max_new_papers_per_year);
				take(o_new_researchers, cfg.new_researchers_per_year, sim_cfg.new_researchers_per_year);
				take(o_start_year, cfg.start_year, sim_cfg.start_year);
				try
				{
					cfg.validate();
				}
				catch (const ConfigError& e)
				{
					throw UsageError(e.what());
				}

				std::filesystem::path dir = sim_out;
				if (dir.empty())
				{
					const char* env = std::getenv(out_dir_env);
					dir = env && *env ? env : "run";
				}

				std::vector<std::pair<int, std::string>> snapshots;
				bool all_audits_ok = true;
				auto result = run(cfg, [&](const SimState& s) {
					all_audits_ok = all_audits_ok && audit(s.graph).ok();
					if (sim_snapshots)
						snapshots.emplace_back(s.year(cfg), to_pajek(layout(s.graph)));
				});
				auto graph = layout(std::move(result.graph));
				const auto report = audit(graph);
				if (!report.ok() || !all_audits_ok)
					throw Error(fmt::format("graph audit failed: {}",
					                        report.ok() ? "at an intermediate year" : report.violations.front()));

				detail::write_file(dir / "graph.json", export_graph(graph, ExportFormat::json));
				detail::write_file(dir / "trajectories.csv", detail::trajectory_csv(result.trajectories));
				for (const auto& [year, text] : snapshots)
					detail::write_file(dir / "snapshots" / detail::snapshot_name(year, ExportFormat::pajek), text);

				std::map<std::uint64_t, std::size_t> histogram;
				for (const auto& [id, r] : graph.researchers())
					++histogram[r.h_index];
				out << fmt::format("researchers {}\npapers {}\nedges {}\nnodes {}\naudit ok\n",
				                   graph.researchers().size(), graph.papers().size(), graph.edges().size(),
				                   graph.node_count());
				out << "h_histogram";
				for (const auto& [h, n] : histogram)
					out << fmt::format(" {}:{}", h, n);
				out << '\n';
				return exit_ok;
			}

			if (replay->parsed())
			{
				if (rp_snapshots && rp_out.empty())
					throw UsageError("--snapshots requires --out");
				if (rp_from && rp_to && *rp_from > *rp_to)
					throw UsageError(fmt::format("--from {} is after --to {}", *rp_from, *rp_to));

				std::ifstream file(rp_input, std::ios::binary);
				if (!file)
					throw Error(fmt::format("cannot open '{}'", rp_input));
				const auto loaded =
				    load_records(file, rp_format == "vectors" ? RecordFormat::yearly_vectors : RecordFormat::long_csv);
				if (loaded.skipped_missing_year > 0)
					err << fmt::format("note: skipped {} rows without a year\n", loaded.skipped_missing_year);
				if (loaded.records.empty())
					throw DataError("input holds no records");

				const auto [lo, hi] = std::ranges::minmax(loaded.records, {}, &CitationRecord::year);
				const int from = rp_from.value_or(lo.year);
				const int to = rp_to.value_or(hi.year);
				if (from > to)
					throw UsageError(fmt::format("year range {}..{} is empty", from, to));

				const auto trajectory = compute_trajectory(loaded.records, from, to);
				const auto csv = detail::replay_csv(trajectory);
				if (rp_out.empty())
					out << csv;
				else
					detail::write_file(std::filesystem::path(rp_out) / "trajectory.csv", csv);

				if (rp_snapshots)
				{
					const auto format = parse_export_format(rp_snapshot_format);
					for (const auto& snap : replay_into_tcln(trajectory, rp_label))
						detail::write_file(std::filesystem::path(rp_out) / "snapshots" /
						                       detail::snapshot_name(snap.year, format),
						                   export_graph(layout(snap.graph), format));
				}
				return exit_ok;
			}

			if (hindex->parsed())
			{
				std::string text;
				if (hi_cites)
					text = *hi_cites;
				else
				{
					std::ostringstream ss;
					ss << in.rdbuf();
					text = ss.str();
				}
				out << compute_h_index(detail::parse_cites(text)) << '\n';
				return exit_ok;
			}

			if (exporter->parsed())
			{
				const auto graph = layout(graph_from_json_text(detail::read_file(ex_input)));
				const auto text = export_graph(graph, parse_export_format(ex_format));
				if (ex_output.empty())
					out << text;
				else
					detail::write_file(ex_output, text);
				return exit_ok;
			}

			if (compare->parsed())
			{
				const auto report = compare_complexity(graph_from_json_text(detail::read_file(cmp_input)));
				if (cmp_json)
					out << complexity_to_json(report).dump(2) << '\n';
				else
					out << detail::format_report_table(report);
				return exit_ok;
			}
		}
		catch (const UsageError& e)
		{
			return fail("usage", e.what(), exit_usage);
		}
		catch (const ParseError& e)
		{
			return fail("parse", e.what(), exit_failure);
		}
		catch (const FormatError& e)
		{
			return fail("format", e.what(), exit_failure);
		}
		catch (const DataError& e)
		{
			return fail("data", e.what(), exit_failure);
		}
		catch (const std::exception& e)
		{
			return fail("runtime", e.what(), exit_failure);
		}
		return fail("usage", "no subcommand given", exit_usage);
	}
}
