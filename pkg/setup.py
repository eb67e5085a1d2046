# This file was auto-generated by Shut. DO NOT EDIT
# For more information about Shut, check out https://pypi.org/project/shut/

from __future__ import print_function
import io
import os
import setuptools
import sys

readme_file = 'README.md'
if os.path.isfile(readme_file):
  with io.open(readme_file, encoding='utf8') as fp:
    long_description = fp.read()
else:
  print("warning: file \"{}\" does not exist.".format(readme_file), file=sys.stderr)
  long_description = None

requirements = [
  'numpy >=1.20.0,<2.0.0',
  'scipy >=1.6.0,<2.0.0',
  'scikit-learn >=0.24.0',
  'databind.core >=0.4.0,<1.0.0',
  'databind.json >=0.4.0,<1.0.0',
  'click >=7.0.0,<8.0.0',
  'networkx >=2.4.0,<3.0.0',
  'nr.fs >=1.5.0,<2.0.0',
  'nr.proxy >=1.0.0,<2.0.0',
  'requests >=2.22.0,<3.0.0',
  'PyYAML >=5.1.0',
  'termcolor >=1.1.0,<2.0.0',
]
test_requirements = [
  'pytest',
]

setuptools.setup(
  name = 'mtsexplain',
  version = '0.1.0',
  author = 'mtsexplain contributors',
  description = 'Explainable convolutional classifiers for multivariate time series with Grad-CAM attribution maps.',
  long_description = long_description,
  long_description_content_type = 'text/markdown',
  license = 'MIT',
  packages = setuptools.find_packages('src', ['test', 'test.*', 'tests', 'tests.*', 'docs', 'docs.*']),
  package_dir = {'': 'src'},
  package_data = {'mtsexplain': ['data/*.csv']},
  include_package_data = True,
  install_requires = requirements,
  extras_require = {},
  tests_require = test_requirements,
  python_requires = '>=3.7.0,<4.0.0',
  data_files = [],
  entry_points = {
    'console_scripts': [
      'mtsexplain = mtsexplain.commands:mtsexplain',
    ]
  },
  cmdclass = {},
  keywords = [],
  classifiers = [],
  zip_safe = False,
)
