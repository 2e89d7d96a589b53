def pytest_addoption(parser):
    parser.addoption('--slow', action='store_true', dest="slow",
                     default=False, help="enable long exhaustive sweeps")

def pytest_configure(config):
    if not config.option.slow:
        setattr(config.option, 'markexpr', 'not slow')
