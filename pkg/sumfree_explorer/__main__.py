import readline
import sys
from pathlib import Path

from appdirs import AppDirs

from sumfree_explorer.commands import EXIT_USAGE, configure_logging, dispatch
from sumfree_explorer.config import UsageError, parse_config


try:
    from colorama import just_fix_windows_console
    just_fix_windows_console()
except ImportError:
    pass

historyfile = Path(AppDirs('sumfree-explorer', 'sumfree').user_data_dir) \
    / 'history'


def save_history() -> None:
    historyfile.parent.mkdir(parents=True, exist_ok=True)
    readline.write_history_file(str(historyfile))


def run_batch(argv) -> int:
    try:
        config = parse_config(argv)
    except UsageError as err:
        sys.stderr.write(f'UsageError: {err}\n')
        return EXIT_USAGE
    configure_logging(config.verbose)
    return dispatch(config)


def main() -> None:
    if len(sys.argv) > 1:
        sys.exit(run_batch(sys.argv[1:]))
    from sumfree_explorer.shell import SumFreeXShell
    configure_logging()
    if historyfile.exists():
        readline.read_history_file(str(historyfile))
    SumFreeXShell().cmdloop()
    save_history()


if __name__ == '__main__':
    main()
