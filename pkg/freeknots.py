#!/usr/bin/env python3
"""
FreeKnots - Unified Command Line Interface

Parity-based invariants of free knots: Gauss code parsing, the invariant L,
the odd-chord deletion map F, bounded Reidemeister search, and verification,
search and generation of cobordism movies.
"""

import argparse
import json
import logging
import sys

from lib.catalog import find_entry, load_catalog, validate_catalog
from lib.census import run_census
from lib.cobordism import (
    dump_movie,
    f_project_movie,
    load_movie,
    main_theorem_check,
    verify,
)
from lib.config_manager import get_config_manager
from lib.diagram import canonical_form, parse_gauss_code
from lib.exceptions import (
    BudgetExceededError,
    ConfigurationError,
    InputError,
    PreconditionNotMetError,
    ValidationError,
)
from lib.group import conj_class_l, eval_word, parse_word, reduce_word
from lib.invariant import f_map, f_star, invariant_l
from lib.movie_search import MovieBounds, random_valid_movie, search_slice_movie
from lib.moves import Verdict, are_equivalent_bounded, orbit, simplify
from lib.reports import get_renderer

# Configure logging; reports go to stdout, log records to stderr
logging.basicConfig(
    level=logging.WARNING,
    format="%(asctime)s [%(levelname)s] %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def setup_common_args(parser, suppress=False):
    """
    Add common arguments to parser

    Subcommands repeat the global options with suppressed defaults so a flag
    given before the subcommand is not reset by the subparser.
    """

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--config", "-c", default=default(None), help="Settings file path")
    parser.add_argument(
        "--debug", "-d", action="store_true", default=default(False), help="Enable debug logging"
    )
    parser.add_argument(
        "--verbose", "-v", action="store_true", default=default(False), help="Enable verbose output"
    )
    parser.add_argument(
        "--json", action="store_true", default=default(False), help="Print the report as JSON"
    )
    parser.add_argument("--seed", type=int, default=default(None), help="Random seed")


def emit(args, template, data):
    renderer = get_renderer()
    if args.json:
        sys.stdout.write(renderer.to_json(data))
    else:
        sys.stdout.write(renderer.render(template, **data))


def cmd_parse(args, settings):
    """Parse a Gauss code and print its canonical form"""
    link = parse_gauss_code(args.code)
    emit(
        args,
        "parse",
        {
            "code": link.to_code(),
            "canonical": canonical_form(link),
            "components": len(link.components),
            "chords": link.num_chords,
        },
    )
    return EXIT_OK


def cmd_invariant(args, settings):
    """Compute L and the parity table of a free knot"""
    link = parse_gauss_code(args.code)
    result = invariant_l(link)
    emit(args, "invariant", {"code": link.to_code(), **result.to_json()})
    return EXIT_OK


def cmd_fmap(args, settings):
    """Delete odd chords once, or until all chords are even"""
    link = parse_gauss_code(args.code)
    image = f_star(link) if args.iterate else f_map(link)
    emit(
        args,
        "link",
        {
            "operation": "F*" if args.iterate else "F",
            "before": link.to_code(),
            "after": image.to_code(),
        },
    )
    return EXIT_OK


def cmd_simplify(args, settings):
    """Greedy R1/R2 removal"""
    link = parse_gauss_code(args.code)
    emit(
        args,
        "link",
        {"operation": "simplify", "before": link.to_code(), "after": simplify(link).to_code()},
    )
    return EXIT_OK


def _search_bounds(args, settings):
    search = settings["search"]
    return (
        args.max_chords or search["max_chords"],
        args.max_nodes or search["max_nodes"],
        args.workers or search["workers"],
    )


def cmd_orbit(args, settings):
    """Every diagram reachable within the chord bound"""
    link = parse_gauss_code(args.code)
    max_chords, max_nodes, workers = _search_bounds(args, settings)

    complete = True
    try:
        members = orbit(link, max_chords, max_nodes, workers)
    except BudgetExceededError as e:
        logger.warning(str(e))
        members, complete = e.partial, False

    emit(
        args,
        "orbit",
        {
            "code": canonical_form(link),
            "size": len(members),
            "complete": complete,
            "members": sorted(members),
        },
    )
    return EXIT_OK if complete else EXIT_NEGATIVE


def cmd_equiv(args, settings):
    """Bounded equivalence check of two diagrams"""
    first, second = parse_gauss_code(args.first), parse_gauss_code(args.second)
    max_chords, max_nodes, workers = _search_bounds(args, settings)
    result = are_equivalent_bounded(first, second, max_chords, max_nodes, workers)
    emit(args, "equiv", result.to_json())
    return EXIT_NEGATIVE if result.verdict is Verdict.UNKNOWN else EXIT_OK


def cmd_word(args, settings):
    """Evaluate a word in a, b, b' on the Cayley strip"""
    letters = parse_word(args.word)
    point = eval_word(letters)
    emit(
        args,
        "word",
        {
            "word": letters,
            "reduced": list(reduce_word(letters)),
            "x": point.x,
            "y": point.y,
            "L": conj_class_l(point) if point.x == 0 else None,
        },
    )
    return EXIT_OK


def _movie_verify(args, settings):
    movie = load_movie(args.file)
    report = verify(movie, strict=args.strict)
    data = report.to_json()
    if report.ok and report.genus == 0:
        data["theorem"] = main_theorem_check(movie).value
    emit(args, "verify", data)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _movie_search(args, settings):
    knot = parse_gauss_code(args.code)
    movie_settings = settings["movie"]
    result = search_slice_movie(
        knot,
        max_events=args.max_events or movie_settings["max_events"],
        max_chords=args.max_chords or movie_settings["max_chords"],
        workers=args.workers or settings["search"]["workers"],
    )
    if result.found and args.output:
        dump_movie(result.movie, args.output)
    emit(args, "search", result.to_json())
    return EXIT_OK if result.found else EXIT_NEGATIVE


def _movie_fproject(args, settings):
    movie = load_movie(args.file)
    try:
        projected = f_project_movie(movie)
    except PreconditionNotMetError as e:
        logger.error(str(e))
        return EXIT_NEGATIVE
    if args.output:
        dump_movie(projected, args.output)
    emit(args, "movie", projected.to_json())
    return EXIT_OK


def _movie_random(args, settings):
    random = settings["random"]
    bounds = MovieBounds(
        max_events=args.max_events or random["max_events"],
        max_chords=args.max_chords or random["max_chords"],
        max_components=random["max_components"],
        genus=None if args.any_genus else args.genus,
        max_attempts=random["max_attempts"],
    )
    seed = args.seed if args.seed is not None else random["seed"]
    movie = random_valid_movie(seed, bounds)
    if args.output:
        dump_movie(movie, args.output)
    emit(args, "movie", movie.to_json())
    return EXIT_OK


def cmd_movie(args, settings):
    """Cobordism movie operations"""
    actions = {
        "verify": _movie_verify,
        "search": _movie_search,
        "fproject": _movie_fproject,
        "random": _movie_random,
    }
    return actions[args.action](args, settings)


def cmd_catalog(args, settings):
    """List the named fixtures with their computed invariants"""
    entries = load_catalog(args.catalog or settings.get("catalog"))
    if args.name:
        entries = [find_entry(entries, name) for name in args.name]

    failures = validate_catalog(entries)
    for name in failures:
        logger.error(f"Catalog entry {name} does not match its expected L")
    emit(args, "catalog", {"entries": [e.to_json() for e in entries]})
    return EXIT_NEGATIVE if failures else EXIT_OK


def cmd_census(args, settings):
    """Exhaustive property checks on small diagrams"""
    census = settings["census"]
    report = run_census(
        args.max_chords if args.max_chords is not None else census["max_chords"],
        args.workers or census["workers"],
    )
    emit(args, "census", report.to_json())
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_config(args, config):
    """Configuration management operations"""
    if args.action == "validate":
        print("✓ Configuration validation passed")
        return EXIT_OK

    value = config
    if args.key:
        for key in args.key.split("."):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                print(f"Key not found: {args.key}")
                return EXIT_NEGATIVE
    print(json.dumps(value, indent=2, default=str))
    return EXIT_OK


def add_search_args(parser):
    parser.add_argument("--max-chords", type=int, help="Largest diagram visited")
    parser.add_argument("--max-nodes", type=int, help="Node budget of the search")
    parser.add_argument("--workers", type=int, help="Threads per search layer")


def build_parser():
    parser = argparse.ArgumentParser(
        description="FreeKnots - parity invariants and cobordisms of free knots",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Gauss codes list chord labels along each circle, components separated by ';'
and '()' for a circle without chords.

Examples:
  freeknots invariant "1 2 1 2"
  freeknots word "(b' a)^7 b' b (a b)^7"
  freeknots fmap --iterate "1 2 1 3 2 3"
  freeknots equiv "1 1" "()"
  freeknots movie search "1 2 2 1" --max-events 3
  freeknots movie verify config/movies/slice-kink.json --json
  freeknots movie random --seed 7 --any-genus
  freeknots catalog
  freeknots census --max-chords 4
        """,
    )
    setup_common_args(parser)

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    for name, help_text in (
        ("parse", "Parse a Gauss code"),
        ("invariant", "Compute the invariant L"),
        ("simplify", "Greedy R1/R2 reduction"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("code", help="Gauss code")
        setup_common_args(sub, suppress=True)

    fmap_parser = subparsers.add_parser("fmap", help="Delete all odd chords")
    fmap_parser.add_argument("code", help="Gauss code")
    fmap_parser.add_argument("--iterate", action="store_true", help="Repeat until all even")
    setup_common_args(fmap_parser, suppress=True)

    orbit_parser = subparsers.add_parser("orbit", help="Bounded Reidemeister orbit")
    orbit_parser.add_argument("code", help="Gauss code")
    add_search_args(orbit_parser)
    setup_common_args(orbit_parser, suppress=True)

    equiv_parser = subparsers.add_parser("equiv", help="Bounded equivalence check")
    equiv_parser.add_argument("first", help="Gauss code")
    equiv_parser.add_argument("second", help="Gauss code")
    add_search_args(equiv_parser)
    setup_common_args(equiv_parser, suppress=True)

    word_parser = subparsers.add_parser("word", help="Evaluate a group word")
    word_parser.add_argument("word", help="Letters a, b, b' with (...)^n groups")
    setup_common_args(word_parser, suppress=True)

    movie_parser = subparsers.add_parser("movie", help="Cobordism movies")
    movie_sub = movie_parser.add_subparsers(dest="action", required=True)

    verify_parser = movie_sub.add_parser("verify", help="Verify a movie file")
    verify_parser.add_argument("file", help="Movie JSON file")
    verify_parser.add_argument(
        "--strict", action="store_true", help="Also compare labels with each level's own parity"
    )
    setup_common_args(verify_parser, suppress=True)

    search_parser = movie_sub.add_parser("search", help="Search for a slice movie")
    search_parser.add_argument("code", help="Gauss code of a knot")
    search_parser.add_argument("--max-events", type=int, help="Longest movie tried")
    search_parser.add_argument("--max-chords", type=int, help="Largest level visited")
    search_parser.add_argument("--workers", type=int, help="Threads per search layer")
    search_parser.add_argument("--output", "-o", help="Write the movie found here")
    setup_common_args(search_parser, suppress=True)

    fproject_parser = movie_sub.add_parser("fproject", help="Project a movie onto even lines")
    fproject_parser.add_argument("file", help="Movie JSON file")
    fproject_parser.add_argument("--output", "-o", help="Write the projected movie here")
    setup_common_args(fproject_parser, suppress=True)

    random_parser = movie_sub.add_parser("random", help="Generate a valid movie")
    random_parser.add_argument("--max-events", type=int, help="Event budget")
    random_parser.add_argument("--max-chords", type=int, help="Largest level")
    random_parser.add_argument("--genus", type=int, default=0, help="Genus of the surface")
    random_parser.add_argument(
        "--any-genus", action="store_true", help="Let the seed choose genus 0 or 1"
    )
    random_parser.add_argument("--output", "-o", help="Write the movie here")
    setup_common_args(random_parser, suppress=True)

    catalog_parser = subparsers.add_parser("catalog", help="Named free knots")
    catalog_parser.add_argument("name", nargs="*", help="Only these entries")
    catalog_parser.add_argument("--catalog", help="Catalog file")
    setup_common_args(catalog_parser, suppress=True)

    census_parser = subparsers.add_parser("census", help="Exhaustive checks on small diagrams")
    census_parser.add_argument("--max-chords", type=int, help="Largest diagram size")
    census_parser.add_argument("--workers", type=int, help="Threads over diagram sizes")
    setup_common_args(census_parser, suppress=True)

    config_parser = subparsers.add_parser("config", help="Configuration management")
    config_parser.add_argument("action", choices=["validate", "show"], help="Configuration action")
    config_parser.add_argument("--key", help="Specific configuration key to show")
    setup_common_args(config_parser, suppress=True)

    return parser


COMMANDS = {
    "parse": cmd_parse,
    "invariant": cmd_invariant,
    "fmap": cmd_fmap,
    "simplify": cmd_simplify,
    "orbit": cmd_orbit,
    "equiv": cmd_equiv,
    "word": cmd_word,
    "movie": cmd_movie,
    "catalog": cmd_catalog,
    "census": cmd_census,
}


def main(argv=None):
    """Main CLI interface"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_ERROR

    try:
        config = get_config_manager().load_configuration(args.config)
    except (ConfigurationError, ValidationError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_ERROR
    settings = config["freeknots"]

    # Configure logging
    if args.debug:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.verbose:
        logging.getLogger().setLevel(logging.INFO)
    else:
        logging.getLogger().setLevel(settings["logging"]["level"])

    # Execute command
    try:
        if args.command == "config":
            return cmd_config(args, config)
        return COMMANDS[args.command](args, settings)

    except (InputError, ValidationError, ConfigurationError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR
    except KeyboardInterrupt:
        logger.info("Operation cancelled by user")
        return EXIT_OK
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        if args.debug:
            import traceback

            traceback.print_exc()
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
