# ***************************************************************************
# Copyright the llitest authors 2024
#
# Licensed under the Eclipse Public License 2.0, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ***************************************************************************

import argparse
import os
import shutil
import sys
import tempfile
import unittest

sys.path.insert(0, os.path.abspath(os.path.dirname(__file__))+os.sep+'..'+os.sep+'..')
from llitest.util import config_util, config_options, constants
from llitest.util.errors import ConfigError


class ConfigTest(unittest.TestCase):

    config_file = os.path.join('test', 'data', 'llitest_config.toml')
    invalid_config_file = os.path.join('test', 'data', 'invalid_config.toml')

    def setUp(self) -> None:
        self.output_dir = tempfile.mkdtemp(prefix='llitest-config-')

    def tearDown(self) -> None:
        shutil.rmtree(self.output_dir, ignore_errors=True)

    def __write(self, name, text):
        path = os.path.join(self.output_dir, name)
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_config_util_init(self) -> None:
        """Test config init"""
        config1 = config_util.init_config()
        config2 = config_util.init_config()
        self.assertDictEqual(config1, config2)
        self.assertIn('systematics', config1)
        self.assertNotIn('sensitivity', config1)
        self.assertEqual(20140419, config1['general']['seed'])
        self.assertEqual(0.0, config1['truth']['c']['c_XZ'])

    def test_config_load_noargs(self) -> None:
        """Test config load without args"""
        self.assertDictEqual(config_util.init_config(), config_util.load_config())
        config = config_util.load_config(config_file=self.config_file)
        self.assertEqual(42, config['general']['seed'])
        self.assertEqual(6.0, config['ramsey']['campaign_hours'])
        self.assertEqual(0.005, config['ramsey']['t_short_s'])

    def test_config_load_args(self) -> None:
        """Test command-line values override the config file"""
        args = argparse.Namespace()
        args.command = 'simulate'
        args.config_file = self.config_file
        args.seed = 7
        args.blind = True
        args.name = 'override'
        args.inject = None
        args.hours = None
        config = config_util.load_config(args=args)
        self.assertEqual(7, config['general']['seed'])
        self.assertTrue(config['general']['blind'])
        self.assertEqual('override', config['simulate']['name'])
        self.assertEqual(6.0, config['ramsey']['campaign_hours'])

    def test_config_required_option(self) -> None:
        """Test the analyze command requires a dataset"""
        args = argparse.Namespace(command='analyze', config_file=None, dataset=None)
        self.assertRaises(ConfigError, config_util.load_config, args=args)
        args.dataset = 'some_dataset.csv'
        self.assertEqual('some_dataset.csv', config_util.load_config(args=args)['analyze']['dataset'])

    def test_config_constraints(self) -> None:
        """Test value constraints are all reported"""
        with self.assertRaises(ConfigError) as context:
            config_util.load_config(config_file=self.invalid_config_file)
        message = str(context.exception)
        self.assertIn('chi_deg', message)
        self.assertIn('t_long_s', message)
        self.assertEqual(3, context.exception.exit_code)

    def test_config_types(self) -> None:
        """Test type checks, integer promotion and unknown tensor components"""
        path = self.__write('types.toml', '[frame]\nchi_deg = "north"\n')
        self.assertRaises(ConfigError, config_util.load_config, config_file=path)
        path = self.__write('promote.toml', '[frame]\nchi_deg = 45\n[truth.c]\nc_XY = 1\n')
        config = config_util.load_config(config_file=path)
        self.assertIsInstance(config['frame']['chi_deg'], float)
        self.assertIsInstance(config['truth']['c']['c_XY'], float)
        path = self.__write('tensor.toml', '[truth.c]\nc_AB = 1e-18\n')
        self.assertRaises(ConfigError, config_util.load_config, config_file=path)
        path = self.__write('broken.toml', '[frame\nchi_deg = 45\n')
        self.assertRaises(ConfigError, config_util.load_config, config_file=path)

    def test_config_unknown_options(self) -> None:
        """Test unknown sections and options are reported as warnings"""
        path = self.__write('unknown.toml', '[telescope]\naperture = 2.0\n[frame]\nlatitude = 37.9\n')
        with self.assertLogs(level='WARNING') as logs:
            config_util.load_config(config_file=path)
        self.assertEqual(2, len(logs.output))

    def test_apply_injections(self) -> None:
        """Test parsing of tensor injections"""
        config = config_util.init_config()
        config_util.apply_injections(config, ['c_XZ=1e-18', ' c_TX = -2e-17'])
        self.assertEqual(1e-18, config['truth']['c']['c_XZ'])
        self.assertEqual(-2e-17, config['truth']['c']['c_TX'])
        config_util.apply_injections(config, None)
        self.assertRaises(ConfigError, config_util.apply_injections, config, ['c_XZ'])
        self.assertRaises(ConfigError, config_util.apply_injections, config, ['c_QQ=1'])
        self.assertRaises(ConfigError, config_util.apply_injections, config, ['c_XZ=big'])

    def test_config_print(self) -> None:
        """Test print options"""
        config_options.print_options_with_help()
        config_options.print_options_with_help(tablefmt='github')
        config_options.print_options_with_help(command='simulate')

    def test_options_spec(self) -> None:
        """Test every option carries the fields the parsers rely on"""
        spec = config_options.get_options_spec()
        for section, options in spec.items():
            self.assertIn('is_cli_command', options)
            for name, option in config_options.get_options_spec(command=section).items():
                for field in ('required', 'is_toml_option', 'is_cli_option', 'type', 'default_value', 'help_message'):
                    self.assertIn(field, option, '{}.{}'.format(section, name))
        self.assertEqual(constants.LLITEST_DEFAULT_CONFIG_FILE, spec['general']['config_file']['default_value'])


if __name__ == '__main__':
    unittest.main()
