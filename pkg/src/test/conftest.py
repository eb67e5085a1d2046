
def pytest_configure(config):
  config.addinivalue_line('markers', 'slow: trains full-size models for many epochs (deselect with -m "not slow")')
