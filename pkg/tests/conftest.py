import surfdeform.tableau


def pytest_configure(config):
    surfdeform.tableau.PARANOID = True
